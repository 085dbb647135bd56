import random
from fractions import Fraction as F

import pytest

from ultraball.fields import PAdicQ, TAdicFunctionField, in_K_R, norm

from conftest import all_fields, random_element


def test_trivial_norm(trivial):
    assert norm(trivial, F(5)) == 1
    assert norm(trivial, F(-7, 3)) == 1
    assert norm(trivial, F(0)) == 0


def test_padic_norm_examples(padic2):
    # v2(12) = 2, so the norm is 2**-2
    assert norm(padic2, F(12)) == F(1, 4)
    assert norm(padic2, F(1, 2)) == 2
    assert norm(padic2, F(3, 5)) == 1
    assert norm(padic2, F(0)) == 0


def test_tadic_norm_examples(tadic):
    t = tadic.t
    one = tadic.one()
    k = tadic.div(tadic.mul(t, t), tadic.add(one, t))  # t^2/(1+t), order 2
    assert norm(tadic, k) == F(1, 4)
    assert norm(tadic, tadic.invert(t)) == 2
    assert norm(tadic, tadic.zero()) == 0


def test_tadic_normal_form(tadic):
    t = tadic.t
    one = tadic.one()
    # (t^2 + t) / (t + 1) reduces to t
    num = tadic.add(tadic.mul(t, t), t)
    den = tadic.add(t, one)
    assert tadic.eq(tadic.div(num, den), t)


def test_in_K_R_examples(trivial, padic2):
    assert not in_K_R(trivial, F(7), F(1, 2))  # K_R = {0} when R < 1
    assert in_K_R(trivial, F(0), F(1, 2))
    assert in_K_R(padic2, F(2), F(1, 2))


def test_in_K_R_requires_positive_R(trivial):
    with pytest.raises(ValueError):
        in_K_R(trivial, F(0), F(0))


def test_padic_requires_prime():
    with pytest.raises(ValueError):
        PAdicQ(6)


def test_tadic_base_range():
    with pytest.raises(ValueError):
        TAdicFunctionField(F(2))
    with pytest.raises(ValueError):
        TAdicFunctionField(F(0))


@pytest.mark.parametrize("field", all_fields(), ids=lambda f: f.spec_string())
def test_norm_laws_random(field):
    rng = random.Random(20260808)
    zero = field.zero()
    for _ in range(1000):
        x = random_element(field, rng)
        y = random_element(field, rng)
        nx, ny = field.norm(x), field.norm(y)
        # positive definiteness
        assert (nx == 0) == field.eq(x, zero)
        # exact multiplicativity
        assert field.norm(field.mul(x, y)) == nx * ny
        # ultrametric inequality, with equality when the norms differ
        ns = field.norm(field.add(x, y))
        assert ns <= max(nx, ny)
        if nx != ny:
            assert ns == max(nx, ny)


@pytest.mark.parametrize("field", all_fields(), ids=lambda f: f.spec_string())
def test_value_group_closure(field):
    rng = random.Random(7)
    for _ in range(300):
        x = random_element(field, rng)
        v = field.norm(x)
        assert v == 0 or field.value_group_contains(v)


@pytest.mark.parametrize("field", all_fields(), ids=lambda f: f.spec_string())
def test_field_axioms_random(field):
    rng = random.Random(11)
    one = field.one()
    for _ in range(200):
        x = random_element(field, rng)
        y = random_element(field, rng)
        assert field.eq(field.add(x, field.neg(x)), field.zero())
        if not field.is_zero(y):
            assert field.eq(field.mul(field.div(x, y), y), x)
        assert field.eq(field.mul(x, one), x)


@pytest.mark.parametrize("field", all_fields(), ids=lambda f: f.spec_string())
def test_sample_in_ball_stays_inside(field):
    import itertools

    rng = random.Random(3)
    center = random_element(field, rng)
    for radius in (F(1, 4), F(1), F(2)):
        samples = list(itertools.islice(field.sample_in_ball(center, radius), 12))
        assert samples  # the center itself is always available
        for z in samples:
            assert field.norm(field.sub(z, center)) <= radius
