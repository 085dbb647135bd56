"""Valued fields: exact rational-valued non-Archimedean norms.

Three concrete instances cover the trivially and non-trivially valued
cases: the rationals with the trivial norm, the rationals with a p-adic
norm, and rational functions in ``t`` with a t-adic norm.  Norm values
are exact ``Fraction``s, so every downstream ball and seminorm
computation stays exact.  None of the instances is complete or
algebraically closed; operations that would need a factorisation take
an explicit witness instead (see the seminorm module).
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

# ---------------------------------------------------------------------------
# dense polynomials over Q, used as the t-adic carrier

QPoly = tuple  # tuple[Fraction, ...], no trailing zeros


def qp_trim(cs) -> QPoly:
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def qp_add(a: QPoly, b: QPoly) -> QPoly:
    n = max(len(a), len(b))
    return qp_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def qp_neg(a: QPoly) -> QPoly:
    return tuple(-c for c in a)


def qp_mul(a: QPoly, b: QPoly) -> QPoly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return qp_trim(out)


def qp_divmod(a: QPoly, b: QPoly) -> tuple[QPoly, QPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    while len(rem) >= len(b) and any(c != 0 for c in rem):
        shift = len(rem) - len(b)
        factor = rem[-1] * inv_lead
        quo[shift] = factor
        for i, cb in enumerate(b):
            rem[shift + i] -= factor * cb
        while rem and rem[-1] == 0:
            rem.pop()
    return qp_trim(quo), qp_trim(rem)


def qp_monic(a: QPoly) -> QPoly:
    if not a:
        return ()
    lead = a[-1]
    return tuple(c / lead for c in a)


def qp_gcd(a: QPoly, b: QPoly) -> QPoly:
    while b:
        a, b = b, qp_divmod(a, b)[1]
    return qp_monic(a)


def qp_ord(a: QPoly) -> int:
    """Index of the first nonzero coefficient (t-adic order)."""
    for i, c in enumerate(a):
        if c != 0:
            return i
    raise ValueError("order of zero polynomial")


def qp_str(a: QPoly, var: str = "t") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append(f"{c}*{var}" if c != 1 else var)
        else:
            parts.append(f"{c}*{var}^{i}" if c != 1 else f"{var}^{i}")
    return " + ".join(parts).replace("+ -", "- ")


# ---------------------------------------------------------------------------


def _padic_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    n = abs(n)
    if p == 2:
        return (n & -n).bit_length() - 1
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _is_power_of(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


_QP_ONE = (Fraction(1),)


class ValuedField(ABC):
    """A field with element ops, decidable equality and an exact norm.

    The norm satisfies norm(k)=0 iff k=0, norm(k*k')=norm(k)*norm(k')
    and norm(k+k') <= max(norm(k), norm(k')); its nonzero values lie in
    the declared value group.  All values are immutable and all
    operations pure.
    """

    name: str = "field"

    @abstractmethod
    def zero(self) -> Any: ...

    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def add(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def neg(self, x: Any) -> Any: ...

    @abstractmethod
    def mul(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def invert(self, x: Any) -> Any: ...

    @abstractmethod
    def eq(self, x: Any, y: Any) -> bool: ...

    @abstractmethod
    def norm(self, x: Any) -> Fraction: ...

    @abstractmethod
    def value_group_contains(self, v: Fraction) -> bool: ...

    @abstractmethod
    def element_from_rational(self, c: Fraction) -> Any: ...

    @abstractmethod
    def format_element(self, x: Any) -> str: ...

    @abstractmethod
    def spec_string(self) -> str:
        """Round-trippable CLI descriptor, e.g. ``padic:2``."""

    @abstractmethod
    def sample_in_ball(self, center: Any, radius: Fraction) -> Iterator[Any]:
        """Deterministic enumeration of elements z with norm(z - center) <= radius."""

    def sub(self, x: Any, y: Any) -> Any:
        return self.add(x, self.neg(y))

    def div(self, x: Any, y: Any) -> Any:
        return self.mul(x, self.invert(y))

    def is_zero(self, x: Any) -> bool:
        return self.eq(x, self.zero())

    def __repr__(self) -> str:
        return f"<{self.spec_string()}>"


def norm(field: ValuedField, k: Any) -> Fraction:
    return field.norm(k)


def in_K_R(field: ValuedField, k: Any, R: Fraction) -> bool:
    """Whether k lies in K_R = {k : norm(k) <= R}."""
    if R <= 0:
        raise ValueError("R must be > 0")
    return field.norm(k) <= R


class TrivialQ(ValuedField):
    """Q with the trivial norm: 0 for zero, 1 otherwise."""

    name = "trivial"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def invert(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def eq(self, x, y):
        return x == y

    def norm(self, x):
        return Fraction(0) if x == 0 else Fraction(1)

    def value_group_contains(self, v):
        return v == 1

    def element_from_rational(self, c):
        return Fraction(c)

    def format_element(self, x):
        return str(x)

    def spec_string(self):
        return "trivial"

    def sample_in_ball(self, center, radius):
        yield center
        if radius >= 1:
            for i in itertools.count(1):
                yield center + i
                yield center - i


class PAdicQ(ValuedField):
    """Q with the p-adic norm, norm(k) = p**(-v_p(k)), computed exactly."""

    name = "padic"

    def __init__(self, p: int) -> None:
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"p must be prime, got {p}")
        self.p = p

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def invert(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def eq(self, x, y):
        return x == y

    def valuation(self, x: Fraction) -> int:
        if x == 0:
            raise ValueError("valuation of zero")
        return _padic_valuation(x.numerator, self.p) - _padic_valuation(
            x.denominator, self.p
        )

    def norm(self, x):
        if x == 0:
            return Fraction(0)
        return Fraction(self.p) ** (-self.valuation(x))

    def value_group_contains(self, v):
        return _is_power_of(v.numerator, self.p) and _is_power_of(
            v.denominator, self.p
        ) and (v.numerator == 1 or v.denominator == 1)

    def element_from_rational(self, c):
        return Fraction(c)

    def format_element(self, x):
        return str(x)

    def spec_string(self):
        return f"padic:{self.p}"

    def sample_in_ball(self, center, radius):
        # largest scale p**m with norm(p**m) <= radius; units u keep |u| <= 1,
        # so |center + scale*u - center| <= radius, attained at units
        if radius <= 0:
            raise ValueError("radius must be > 0")
        m = 0
        while Fraction(self.p) ** (-m) > radius:
            m += 1
        while Fraction(self.p) ** (-(m - 1)) <= radius:
            m -= 1
        scale = Fraction(self.p) ** m
        yield center
        for u in itertools.count(1):
            yield center + scale * u
            yield center - scale * u


@dataclass(frozen=True)
class TAdicElement:
    """A rational function num/den in t, in reduced normal form.

    gcd(num, den) = 1 and den is monic, so structural equality decides
    field equality.  Zero is ((), (1,)).
    """

    num: QPoly
    den: QPoly

    @staticmethod
    def make(num, den) -> "TAdicElement":
        num, den = qp_trim(num), qp_trim(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return TAdicElement((), _QP_ONE)
        if den == _QP_ONE:  # already reduced, the common case
            return TAdicElement(num, den)
        g = qp_gcd(num, den)
        if len(g) > 1 or (g and g[0] != 1):
            num = qp_divmod(num, g)[0]
            den = qp_divmod(den, g)[0]
        lead = den[-1]
        if lead != 1:
            num = tuple(c / lead for c in num)
            den = tuple(c / lead for c in den)
        return TAdicElement(num, den)


class TAdicFunctionField(ValuedField):
    """Rational functions in t over Q with the t-adic norm b**ord_t.

    The base b (default 1/2) is a free normalisation; any 0 < b < 1
    induces the same topology.
    """

    name = "tadic"

    def __init__(self, base: Fraction = Fraction(1, 2)) -> None:
        base = Fraction(base)
        if not 0 < base < 1:
            raise ValueError("base must satisfy 0 < b < 1")
        self.base = base

    @property
    def t(self) -> TAdicElement:
        return TAdicElement((Fraction(0), Fraction(1)), (Fraction(1),))

    def zero(self):
        return TAdicElement((), (Fraction(1),))

    def one(self):
        return TAdicElement((Fraction(1),), (Fraction(1),))

    def add(self, x, y):
        if x.den == _QP_ONE and y.den == _QP_ONE:
            return TAdicElement(qp_add(x.num, y.num), _QP_ONE)
        return TAdicElement.make(
            qp_add(qp_mul(x.num, y.den), qp_mul(y.num, x.den)),
            qp_mul(x.den, y.den),
        )

    def neg(self, x):
        return TAdicElement(qp_neg(x.num), x.den)

    def mul(self, x, y):
        if x.den == _QP_ONE and y.den == _QP_ONE:
            return TAdicElement(qp_mul(x.num, y.num), _QP_ONE)
        return TAdicElement.make(qp_mul(x.num, y.num), qp_mul(x.den, y.den))

    def invert(self, x):
        if not x.num:
            raise ZeroDivisionError("inverse of zero")
        return TAdicElement.make(x.den, x.num)

    def eq(self, x, y):
        return x == y

    def order(self, x: TAdicElement) -> int:
        if not x.num:
            raise ValueError("order of zero")
        return qp_ord(x.num) - qp_ord(x.den)

    def norm(self, x):
        if not x.num:
            return Fraction(0)
        return self.base ** self.order(x)

    def value_group_contains(self, v):
        if v <= 0:
            return False
        w = Fraction(1)
        if v == 1:
            return True
        if v < 1:
            while w > v:
                w *= self.base
            return w == v
        inv = 1 / self.base
        while w < v:
            w *= inv
        return w == v

    def element_from_rational(self, c):
        c = Fraction(c)
        return TAdicElement(() if c == 0 else (c,), (Fraction(1),))

    def format_element(self, x):
        if x.den == (Fraction(1),):
            return qp_str(x.num)
        return f"({qp_str(x.num)})/({qp_str(x.den)})"

    def spec_string(self):
        return f"tadic:{self.base}"

    def _t_power(self, m: int) -> TAdicElement:
        if m >= 0:
            return TAdicElement(
                tuple([Fraction(0)] * m + [Fraction(1)]), (Fraction(1),)
            )
        return TAdicElement(
            (Fraction(1),), tuple([Fraction(0)] * (-m) + [Fraction(1)])
        )

    def sample_in_ball(self, center, radius):
        if radius <= 0:
            raise ValueError("radius must be > 0")
        m = 0
        while self.base**m > radius:
            m += 1
        while self.base ** (m - 1) <= radius:
            m -= 1
        scale = self._t_power(m)
        yield center
        t = self.t
        for c in itertools.count(1):
            u = self.element_from_rational(Fraction(c))
            yield self.add(center, self.mul(scale, u))
            yield self.add(center, self.mul(scale, self.add(u, t)))
