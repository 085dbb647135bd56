import random
from fractions import Fraction

import pytest

from ultraball.fields import PAdicQ, TAdicFunctionField, TrivialQ


@pytest.fixture
def trivial():
    return TrivialQ()


@pytest.fixture
def padic2():
    return PAdicQ(2)


@pytest.fixture
def padic3():
    return PAdicQ(3)


@pytest.fixture
def tadic():
    return TAdicFunctionField(Fraction(1, 2))


def all_fields():
    return [TrivialQ(), PAdicQ(2), PAdicQ(3), TAdicFunctionField(Fraction(1, 2))]


def random_rational(rng: random.Random, span: int = 9, den: int = 8) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def random_element(field, rng: random.Random):
    """A random element of the field, small enough to keep tests exact-fast."""
    if isinstance(field, TAdicFunctionField):
        # c * t^e, occasionally with a unit polynomial factor
        c = random_rational(rng)
        e = rng.randint(0, 3)
        coeffs = [Fraction(0)] * e + [c]
        if rng.random() < 0.3:
            coeffs.append(random_rational(rng))
        from ultraball.fields import TAdicElement, qp_trim

        return TAdicElement.make(qp_trim(coeffs), (Fraction(1),))
    return random_rational(rng)


def random_in_K_R(field, rng: random.Random, R: Fraction):
    """A random element with norm <= R."""
    from ultraball.fields import in_K_R

    if isinstance(field, TrivialQ) and R < 1:
        return Fraction(0)
    for _ in range(200):
        k = random_element(field, rng)
        if in_K_R(field, k, R):
            return k
        # shrink: multiply by a uniformizer-ish element until inside
        if isinstance(field, PAdicQ):
            k = k * field.p
        elif isinstance(field, TAdicFunctionField):
            k = field.mul(k, field.t)
        if in_K_R(field, k, R):
            return k
    return field.zero()
