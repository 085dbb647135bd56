"""Round-trip between seminorms and filters, plus sampling oracles.

``seminorm_to_filter`` turns a seminorm into the membership view of the
ball family {B_q(k) : value(T - k) known below q}.  The view exposes
*only* membership tests; the induced seminorm is then reconstructed
from those tests alone (binary search over dyadic radii), so comparing
it against the original seminorm genuinely exercises both directions of
the correspondence instead of restating one of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .ballspace import FormalBall, RGoodFilter, filter_member
from .exactnum import (
    DEFAULT_DEPTH,
    INF,
    Exact,
    ExtRational,
    Stream,
    UpperReal,
    upper_lt,
    upper_scale,
)
from .seminorms import KSeminorm, LinPoly, Poly, hat_ball_poly, poly_eval


class SeminormFilterView:
    """Membership view of the ball family induced by a seminorm."""

    def __init__(self, seminorm: KSeminorm) -> None:
        self.seminorm = seminorm
        self.space = seminorm.space
        self._values: dict[Any, UpperReal] = {}

    def _value_at(self, center: Any) -> UpperReal:
        got = self._values.get(center)
        if got is None:
            one = self.space.field.one()
            got = self.seminorm.lin_value(LinPoly(one, center))
            self._values[center] = got
        return got

    def member(self, center: Any, radius: Fraction, depth: int) -> bool:
        """Semi-decide B_radius(center) in F: value(T - center) < radius."""
        return upper_lt(self._value_at(center), radius, depth)


def seminorm_to_filter(x: KSeminorm) -> SeminormFilterView:
    return SeminormFilterView(x)


def _radius_bound(view: SeminormFilterView, center: Any, depth: int) -> ExtRational:
    """Least dyadic radius (grid 2**-depth) accepted by the view at this depth.

    Membership is monotone in the radius (upward closure) and in the
    depth, so the returned bounds are non-increasing in depth and their
    infimum is the view's radius section at the center.
    """
    den = 1 << depth
    hi = (view.space.R + 1) * den
    hi_m = hi.numerator // hi.denominator + 1
    if not view.member(center, Fraction(hi_m, den), depth):
        return INF
    lo_m = 0  # radius 0 is never a member (radii are strictly positive)
    while hi_m - lo_m > 1:
        mid = (lo_m + hi_m) // 2
        if view.member(center, Fraction(mid, den), depth):
            hi_m = mid
        else:
            lo_m = mid
    return Fraction(hi_m, den)


def induced_seminorm_lin(view: SeminormFilterView, f: LinPoly) -> UpperReal:
    """Value of the view-induced seminorm on a*T - b.

    Constants are forced to Exact(|b|) by every filter; centers outside
    K_R are forced to Exact(|b/a| * |a|); otherwise the value is
    |a| times the radius section at b/a, realised purely through
    membership queries.
    """
    field = view.space.field
    if field.is_zero(f.a):
        return Exact(field.norm(f.b))
    c = field.div(f.b, f.a)
    na = field.norm(f.a)
    if field.norm(c) > view.space.R:
        return Exact(na * field.norm(c))
    return upper_scale(na, Stream(lambda d: _radius_bound(view, c, d)))


@dataclass(frozen=True)
class Disagreement:
    probe: str
    lhs: bool
    rhs: bool


@dataclass(frozen=True)
class RoundtripReport:
    ok: bool
    probes_checked: int
    disagreements: tuple[Disagreement, ...]


def verify_roundtrip_seminorm(
    x: KSeminorm,
    probes: Sequence[tuple[LinPoly, Fraction]],
    depth: int = DEFAULT_DEPTH,
) -> RoundtripReport:
    """Check x against the seminorm induced by its own membership view.

    For each probe (f, q) the two semi-decisions ``value < q`` must
    agree whenever either side answers yes.
    """
    view = seminorm_to_filter(x)
    field = x.space.field
    bad: list[Disagreement] = []
    for f, q in probes:
        lhs = upper_lt(x.lin_value(f), q, depth)
        rhs = upper_lt(induced_seminorm_lin(view, f), q, depth)
        if lhs != rhs:
            label = (
                f"{field.format_element(f.a)}*T - {field.format_element(f.b)} < {q}"
            )
            bad.append(Disagreement(label, lhs, rhs))
    return RoundtripReport(not bad, len(probes), tuple(bad))


def verify_roundtrip_filter(
    filt: RGoodFilter,
    probe_balls: Sequence[FormalBall],
    depth: int = DEFAULT_DEPTH,
) -> RoundtripReport:
    """Check F against the filter induced by its own seminorm.

    A probe ball is a member of F exactly when the seminorm value of
    T - center is known below the radius.
    """
    from .seminorms import filter_seminorm_lin

    field = filt.space.field
    one = field.one()
    bad: list[Disagreement] = []
    for ball in probe_balls:
        lhs = filter_member(filt, ball, depth)
        rhs = upper_lt(
            filter_seminorm_lin(filt, LinPoly(one, ball.center)),
            ball.radius,
            depth,
        )
        if lhs != rhs:
            label = f"B({ball.radius}; {field.format_element(ball.center)})"
            bad.append(Disagreement(label, lhs, rhs))
    return RoundtripReport(not bad, len(probe_balls), tuple(bad))


@dataclass(frozen=True)
class MaxModulusReport:
    bound: Fraction
    all_within_bound: bool
    witness: Any | None
    max_seen: Fraction
    samples_checked: int

    @property
    def ok(self) -> bool:
        return self.all_within_bound and self.witness is not None


def max_modulus_oracle(
    space,
    ball: FormalBall,
    poly: Poly,
    sample_count: int = 32,
    seed: int = 0,
) -> MaxModulusReport:
    """Sampling check of the maximum-modulus bound on a ball.

    Every sampled z with |z - k| <= q must satisfy |f(z)| <= the
    recentered max value; a witness attaining equality is searched for
    and is expected to exist when the radius lies in the value group.
    The enumeration is deterministic; the seed only rotates its start.
    """
    field = space.field
    bound = hat_ball_poly(field, ball, poly)
    samples = []
    it = field.sample_in_ball(ball.center, ball.radius)
    skip = seed % 7
    for i, z in enumerate(it):
        if i >= sample_count + skip:
            break
        if i >= skip or i == 0:
            samples.append(z)
    witness = None
    max_seen = Fraction(0)
    all_within = True
    for z in samples:
        v = field.norm(poly_eval(field, poly.coeffs, z))
        if v > bound:
            all_within = False
        if v > max_seen:
            max_seen = v
        if witness is None and v == bound:
            witness = z
    return MaxModulusReport(bound, all_within, witness, max_seen, len(samples))
