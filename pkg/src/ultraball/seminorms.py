"""Seminorms on linear polynomials, K[T] and truncated power series.

The per-ball value on a linear polynomial a*T - b is the exact rational
max(|a*k - b|, |a|*q).  A filter's value is the infimum over its
generators; disc points admit closed forms and give Exact values, while
chains give bound streams.  Chain streams are capped by the Gauss norm:
balls of radius just above R at every admissible center belong to every
filter, and their values converge to the Gauss norm from above, so the
cap is itself a true member bound.

Extension to K[T] goes through the recentering form max_i |c_i| q^i on
the shifted coefficients, which needs no factorisation.  When a
factorisation witness is available, the product of linear values must
agree with it exactly, and the verification suite checks that identity.
Truncated power series get certified interval enclosures driven by a
caller-supplied tail bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .ballspace import DiscPoint, FormalBall, RGoodFilter, Space
from .errors import FactorizationRequired
from .exactnum import Exact, ExtRational, Stream, UpperReal, to_exact
from .fields import ValuedField


@dataclass(frozen=True)
class LinPoly:
    """The linear polynomial a*T - b."""

    a: Any
    b: Any


@dataclass(frozen=True)
class Factorization:
    """Witness f = lead * prod_j (T - roots[j])."""

    lead: Any
    roots: tuple


@dataclass(frozen=True)
class Poly:
    """Dense coefficients (c0, ..., cm), optionally with a factorisation
    witness.  Use :func:`make_poly` / :func:`poly_from_roots` so the
    witness invariant is checked at construction."""

    coeffs: tuple
    witness: Factorization | None = None


@dataclass(frozen=True)
class TruncSeries:
    """Truncation a0..an of a power series with a certified tail bound.

    The caller guarantees tail_bound >= max_{i>n} |a_i| R^i; nothing
    here can check that, so enclosures are only as good as the bound.
    """

    coeffs: tuple
    tail_bound: Fraction

    def __post_init__(self) -> None:
        tb = Fraction(self.tail_bound)
        if tb < 0:
            raise ValueError("tail_bound must be >= 0")
        object.__setattr__(self, "tail_bound", tb)


# ---------------------------------------------------------------------------
# dense polynomial helpers over an arbitrary valued field


def poly_trim(field: ValuedField, coeffs: Sequence) -> tuple:
    cs = list(coeffs)
    while cs and field.is_zero(cs[-1]):
        cs.pop()
    return tuple(cs)


def poly_add(field: ValuedField, f: Sequence, g: Sequence) -> tuple:
    n = max(len(f), len(g))
    z = field.zero()
    return poly_trim(
        field,
        [
            field.add(f[i] if i < len(f) else z, g[i] if i < len(g) else z)
            for i in range(n)
        ],
    )


def poly_mul(field: ValuedField, f: Sequence, g: Sequence) -> tuple:
    if not f or not g:
        return ()
    out = [field.zero()] * (len(f) + len(g) - 1)
    for i, ci in enumerate(f):
        for j, cj in enumerate(g):
            out[i + j] = field.add(out[i + j], field.mul(ci, cj))
    return poly_trim(field, out)


def poly_eval(field: ValuedField, f: Sequence, z: Any) -> Any:
    acc = field.zero()
    for c in reversed(f):
        acc = field.add(field.mul(acc, z), c)
    return acc


def poly_from_roots(field: ValuedField, lead: Any, roots: Sequence) -> Poly:
    """Expand lead * prod (T - root) and attach the witness."""
    coeffs: tuple = (field.one(),)
    for r in roots:
        coeffs = poly_mul(field, coeffs, (field.neg(r), field.one()))
    coeffs = poly_trim(field, [field.mul(lead, c) for c in coeffs])
    return Poly(coeffs, Factorization(lead, tuple(roots)))


def make_poly(field: ValuedField, coeffs: Sequence) -> Poly:
    return Poly(poly_trim(field, coeffs))


def verify_witness(field: ValuedField, poly: Poly) -> bool:
    if poly.witness is None:
        return True
    expanded = poly_from_roots(field, poly.witness.lead, poly.witness.roots)
    if len(expanded.coeffs) != len(poly.coeffs):
        return False
    return all(
        field.eq(a, b) for a, b in zip(expanded.coeffs, poly.coeffs)
    )


def lin_as_poly(field: ValuedField, f: LinPoly) -> Poly:
    return make_poly(field, (field.neg(f.b), f.a))


def taylor_shift(field: ValuedField, coeffs: Sequence, k: Any) -> tuple:
    """Coefficients c_i with f(T) = sum c_i (T - k)^i, by iterated
    synthetic division; exact over the field."""
    a = list(coeffs)
    n = len(a)
    for j in range(n - 1):
        for i in range(n - 2, j - 1, -1):
            a[i] = field.add(a[i], field.mul(k, a[i + 1]))
    return tuple(a)


# ---------------------------------------------------------------------------
# seminorm values


def gauss_lin(field: ValuedField, R: Fraction, f: LinPoly) -> Fraction:
    return max(field.norm(f.a) * R, field.norm(f.b))


def gauss_norm_poly(field: ValuedField, poly: Poly | Sequence, R: Fraction) -> Fraction:
    """max_i |c_i| R^i, the reference norm bounding every filter value."""
    coeffs = poly.coeffs if isinstance(poly, Poly) else poly_trim(field, poly)
    if R <= 0:
        raise ValueError("R must be > 0")
    if not coeffs:
        return Fraction(0)
    return max(field.norm(c) * R**i for i, c in enumerate(coeffs))


def ball_seminorm_lin(field: ValuedField, ball: FormalBall, f: LinPoly) -> Fraction:
    """max(|a*k - b|, |a|*q), exact."""
    return max(
        field.norm(field.sub(field.mul(f.a, ball.center), f.b)),
        field.norm(f.a) * ball.radius,
    )


def hat_ball_poly(field: ValuedField, ball: FormalBall, poly: Poly | Sequence) -> Fraction:
    """max_i |c_i| q^i over the coefficients recentered at the ball's center.

    Multiplicative and ultrametric; agrees with the product of linear
    factor values whenever a factorisation exists.
    """
    coeffs = poly.coeffs if isinstance(poly, Poly) else tuple(poly)
    if not coeffs:
        return Fraction(0)
    shifted = taylor_shift(field, coeffs, ball.center)
    return max(field.norm(c) * ball.radius**i for i, c in enumerate(shifted))


def product_ball_poly(field: ValuedField, ball: FormalBall, poly: Poly) -> Fraction:
    """|lead| * prod_j max(|k - b_j|, q); requires a factorisation witness."""
    if poly.witness is None:
        raise FactorizationRequired("factorization required")
    acc = field.norm(poly.witness.lead)
    for root in poly.witness.roots:
        acc *= max(
            field.norm(field.sub(ball.center, root)),
            ball.radius,
        )
    return acc


def filter_seminorm_lin(filt: RGoodFilter, f: LinPoly) -> UpperReal:
    """inf over member balls of the per-ball value.

    DiscPoint(k, r): Exact(max(|a*k - b|, |a|*r)).  Chain: running
    minimum over generator values, capped by the Gauss norm.
    """
    space = filt.space
    gen = filt.generator
    if isinstance(gen, DiscPoint):
        return Exact(
            max(
                space.field.norm(
                    space.field.sub(space.field.mul(f.a, gen.center), f.b)
                ),
                space.field.norm(f.a) * gen.limit_radius,
            )
        )
    cap = gauss_lin(space.field, space.R, f)
    memo: dict[int, Fraction] = {}  # idempotent writes, safe to share

    def bound(d: int) -> Fraction:
        acc = cap
        for i in range(d + 1):
            v = memo.get(i)
            if v is None:
                v = ball_seminorm_lin(space.field, gen.ball_at(i), f)
                memo[i] = v
            if v < acc:
                acc = v
        return acc

    return Stream(bound)


def filter_seminorm_poly(filt: RGoodFilter, poly: Poly | Sequence) -> UpperReal:
    """inf over generators of the per-ball K[T] value; <= the Gauss norm.

    DiscPoint(k, r) has the closed form max_i |c_i(k)| r^i on the
    recentered coefficients (the r = 0 term degenerates to |f(k)|).
    """
    space = filt.space
    gen = filt.generator
    coeffs = poly.coeffs if isinstance(poly, Poly) else tuple(poly)
    if not coeffs:
        return Exact(Fraction(0))
    if isinstance(gen, DiscPoint):
        shifted = taylor_shift(space.field, coeffs, gen.center)
        return Exact(
            max(
                space.field.norm(c) * gen.limit_radius**i
                for i, c in enumerate(shifted)
            )
        )
    cap = gauss_norm_poly(space.field, coeffs, space.R)
    memo: dict[int, Fraction] = {}

    def bound(d: int) -> Fraction:
        acc = cap
        for i in range(d + 1):
            v = memo.get(i)
            if v is None:
                v = hat_ball_poly(space.field, gen.ball_at(i), coeffs)
                memo[i] = v
            if v < acc:
                acc = v
        return acc

    return Stream(bound)


def series_enclosure(
    filt: RGoodFilter, series: TruncSeries, depth: int
) -> tuple[Fraction, ExtRational]:
    """Certified interval for the power-series value.

    Computes the truncation's value v (exact, or the bound at ``depth``)
    and returns [max(0, v - tail), v + tail].  Whenever the tail bound
    certificate is valid, refinements at longer truncations stay inside.
    """
    value = filter_seminorm_poly(filt, make_poly(filt.space.field, series.coeffs))
    v = to_exact(value, depth)
    if v is None:
        v = value.bound_at(depth)
    lo = max(Fraction(0), v - series.tail_bound)
    hi = v + series.tail_bound
    return lo, hi


# ---------------------------------------------------------------------------
# seminorm objects


class KSeminorm:
    """Evaluator for linear polynomials over a fixed field and R.

    Lawful instances preserve constants, are semi-multiplicative,
    ultrametric and bounded by the Gauss norm; those laws are checked by
    the test-suite on probe grids, not enforced here.
    """

    def __init__(self, space: Space) -> None:
        self.space = space

    def lin_value(self, f: LinPoly) -> UpperReal:
        raise NotImplementedError


class FilterSeminorm(KSeminorm):
    """The seminorm induced by an R-good filter."""

    def __init__(self, filt: RGoodFilter) -> None:
        super().__init__(filt.space)
        self.filt = filt

    def lin_value(self, f: LinPoly) -> UpperReal:
        return filter_seminorm_lin(self.filt, f)

    def poly_value(self, poly: Poly | Sequence) -> UpperReal:
        return filter_seminorm_poly(self.filt, poly)


class GaussNorm(KSeminorm):
    """The Gauss norm itself, as a seminorm object."""

    def lin_value(self, f: LinPoly) -> UpperReal:
        return Exact(gauss_lin(self.space.field, self.space.R, f))

    def poly_value(self, poly: Poly | Sequence) -> UpperReal:
        return Exact(gauss_norm_poly(self.space.field, poly, self.space.R))
