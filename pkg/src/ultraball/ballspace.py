"""Formal balls, their inclusion order, filters and R-goodness.

A formal ball is the pair (center, radius) with radius a positive
rational; inclusion is defined arithmetically, ``B_q'(k') <= B_q(k)``
iff ``|k - k'| < q`` and ``q' <= q``, never through point membership.
This keeps radii well-defined even over trivially valued fields.

Filters are represented by generators rather than extensionally:

* ``DiscPoint(k, r)`` denotes the upward closure of balls strictly
  containing the limit disc, ``{B_q(a) : max(|k - a|, r) < q}``.
  Membership is decidable.
* ``Chain`` is a descending, depth-indexed sequence of balls.
  Membership is semi-decidable; chains given by finite prefixes stand
  for test fixtures only and are probed within the prefix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Sequence, Union

from .errors import SemanticError
from .exactnum import Exact, Stream, UpperReal
from .fields import ValuedField, in_K_R


@dataclass(frozen=True)
class FormalBall:
    center: Any
    radius: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.radius, Fraction):
            object.__setattr__(self, "radius", Fraction(self.radius))


@dataclass(frozen=True)
class DiscPoint:
    """Generator of the filter of balls strictly containing a limit disc."""

    center: Any
    limit_radius: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.limit_radius, Fraction):
            object.__setattr__(self, "limit_radius", Fraction(self.limit_radius))


class Chain:
    """Depth-indexed descending sequence of balls.

    ``balls`` must be a pure index function.  ``prefix_len`` marks a
    finite fixture prefix: probes beyond it are clamped to the last
    generator instead of pretending the sequence continues.
    """

    def __init__(
        self,
        balls: Callable[[int], FormalBall],
        prefix_len: int | None = None,
    ) -> None:
        if prefix_len is not None and prefix_len < 1:
            raise ValueError("prefix_len must be >= 1")
        self._balls = balls
        self.prefix_len = prefix_len
        self._cache: dict[int, FormalBall] = {}

    def ball_at(self, index: int) -> FormalBall:
        if index < 0:
            raise ValueError("index must be >= 0")
        if self.prefix_len is not None:
            index = min(index, self.prefix_len - 1)
        got = self._cache.get(index)
        if got is None:
            got = self._balls(index)
            self._cache[index] = got
        return got


Generator = Union[DiscPoint, Chain]


class Space:
    """A valued field together with the ambient radius bound R > 0.

    Construction helpers here enforce the invariants: ball centers lie
    in K_R, disc-point limit radii lie in [0, R].
    """

    def __init__(self, field: ValuedField, R: Fraction) -> None:
        R = Fraction(R)
        if R <= 0:
            raise ValueError("R must be > 0")
        self.field = field
        self.R = R

    def ball(self, center: Any, radius: Fraction) -> FormalBall:
        radius = Fraction(radius)
        if radius <= 0:
            raise SemanticError(f"ball radius must be > 0, got {radius}")
        if not in_K_R(self.field, center, self.R):
            raise SemanticError(
                f"center not in K_R: |{self.field.format_element(center)}| = "
                f"{self.field.norm(center)} > {self.R}"
            )
        return FormalBall(center, radius)

    def disc_point(self, center: Any, limit_radius: Fraction) -> "RGoodFilter":
        limit_radius = Fraction(limit_radius)
        if limit_radius < 0:
            raise SemanticError("limit radius must be >= 0")
        if limit_radius > self.R:
            raise SemanticError(
                f"limit radius {limit_radius} exceeds R = {self.R}"
            )
        if not in_K_R(self.field, center, self.R):
            raise SemanticError(
                f"center not in K_R: |{self.field.format_element(center)}| = "
                f"{self.field.norm(center)} > {self.R}"
            )
        return RGoodFilter(self, DiscPoint(center, limit_radius))

    def chain(
        self,
        balls: Sequence[FormalBall] | Callable[[int], FormalBall],
        prefix_len: int | None = None,
    ) -> "RGoodFilter":
        if callable(balls):
            return RGoodFilter(self, Chain(balls, prefix_len))
        seq = tuple(balls)
        if not seq:
            raise SemanticError("chain needs at least one ball")
        return RGoodFilter(self, Chain(lambda i: seq[i], len(seq)))

    def __repr__(self) -> str:
        return f"Space({self.field.spec_string()}, R={self.R})"


class RGoodFilter:
    """A filter of formal balls, presented by a generator."""

    def __init__(self, space: Space, generator: Generator) -> None:
        self.space = space
        self.generator = generator

    def __repr__(self) -> str:
        return f"RGoodFilter({self.space!r}, {self.generator!r})"


def ball_included(field: ValuedField, inner: FormalBall, outer: FormalBall) -> bool:
    """Decide inner <= outer: |k - k'| < q and q' <= q, exactly."""
    return (
        field.norm(field.sub(outer.center, inner.center)) < outer.radius
        and inner.radius <= outer.radius
    )


def ball_equal(field: ValuedField, a: FormalBall, b: FormalBall) -> bool:
    """Mutual inclusion; equal balls necessarily share their radius."""
    return ball_included(field, a, b) and ball_included(field, b, a)


def filter_member(filt: RGoodFilter, ball: FormalBall, depth: int) -> bool:
    """Semi-decide membership of a ball in the filter.

    DiscPoint membership is decidable (False is a definite no).  For a
    Chain, True needs either radius > R or a generator within ``depth``
    included in the ball; False only means unknown at this depth.
    """
    space = filt.space
    gen = filt.generator
    if isinstance(gen, DiscPoint):
        dist = space.field.norm(space.field.sub(gen.center, ball.center))
        return max(dist, gen.limit_radius) < ball.radius
    if ball.radius > space.R:
        return True
    limit = depth
    if gen.prefix_len is not None:
        limit = min(limit, gen.prefix_len - 1)
    for i in range(limit + 1):
        if ball_included(space.field, gen.ball_at(i), ball):
            return True
    return False


def filter_radius(filt: RGoodFilter) -> UpperReal:
    """The upper real {q : some ball of radius q is a member}; lies in [0, R]."""
    gen = filt.generator
    if isinstance(gen, DiscPoint):
        return Exact(gen.limit_radius)
    R = filt.space.R

    def bound(d: int) -> Fraction:
        acc = R  # every radius above R is a member, so R bounds from depth 0
        for i in range(d + 1):
            acc = min(acc, gen.ball_at(i).radius)
        return acc

    return Stream(bound)


@dataclass(frozen=True)
class ClauseResult:
    clause: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class FilterLawReport:
    ok: bool
    clauses: tuple[ClauseResult, ...]
    unverified_tail: int = 0

    def failures(self) -> tuple[ClauseResult, ...]:
        return tuple(c for c in self.clauses if not c.ok)


def _fmt_ball(space: Space, b: FormalBall) -> str:
    return f"B({b.radius}; {space.field.format_element(b.center)})"


def check_R_good(filt: RGoodFilter, depth: int, samples: int) -> FilterLawReport:
    """Bounded verifier for the filter laws on a generator prefix.

    Checks generator validity, the descending-chain property, total
    order under inclusion, the strictly-smaller-radius clause and
    membership of sampled balls of radius just above R.  A prefix can
    refute the strictly-smaller clause only with positive evidence: a
    radius value <= R that never decreases across the whole prefix.
    Entries whose smaller-radius witness would lie beyond the prefix are
    counted in ``unverified_tail`` rather than failed.
    """
    if depth < 1 or samples < 1:
        raise ValueError("depth and samples must be >= 1")
    space = filt.space
    field = space.field
    gen = filt.generator
    clauses: list[ClauseResult] = []
    tail = 0

    if isinstance(gen, DiscPoint):
        ok_valid = in_K_R(field, gen.center, space.R) and (
            0 <= gen.limit_radius <= space.R
        )
        clauses.append(
            ClauseResult(
                "generators-valid",
                ok_valid,
                "" if ok_valid else "disc point violates center/radius bounds",
            )
        )
        clauses.append(ClauseResult("descending", True, "closed form"))
        clauses.append(ClauseResult("total-order", True, "closed form"))
        # every member B_q strictly contains the limit disc, so a radius
        # strictly between max(|k-a|, r) and q always witnesses the clause
        clauses.append(ClauseResult("strictly-smaller-radius", True, "closed form"))
        ok_large = all(
            filter_member(
                filt, FormalBall(gen.center, space.R + Fraction(1, j)), depth
            )
            for j in range(1, samples + 1)
        )
        clauses.append(
            ClauseResult(
                "large-radius-membership",
                ok_large,
                "" if ok_large else "ball of radius > R rejected",
            )
        )
        ok = all(c.ok for c in clauses)
        return FilterLawReport(ok, tuple(clauses))

    n = depth
    if gen.prefix_len is not None:
        n = min(n, gen.prefix_len)
    balls = [gen.ball_at(i) for i in range(n)]

    bad = next(
        (
            b
            for b in balls
            if b.radius <= 0 or not in_K_R(field, b.center, space.R)
        ),
        None,
    )
    clauses.append(
        ClauseResult(
            "generators-valid",
            bad is None,
            "" if bad is None else f"invalid generator {_fmt_ball(space, bad)}",
        )
    )

    desc_bad = next(
        (
            i
            for i in range(n - 1)
            if not ball_included(field, balls[i + 1], balls[i])
        ),
        None,
    )
    clauses.append(
        ClauseResult(
            "descending",
            desc_bad is None,
            ""
            if desc_bad is None
            else f"{_fmt_ball(space, balls[desc_bad + 1])} not included in "
            f"{_fmt_ball(space, balls[desc_bad])} at index {desc_bad}",
        )
    )

    order_bad = None
    for i in range(n):
        for j in range(i + 1, n):
            if not (
                ball_included(field, balls[j], balls[i])
                or ball_included(field, balls[i], balls[j])
            ):
                order_bad = (i, j)
                break
        if order_bad:
            break
    clauses.append(
        ClauseResult(
            "total-order",
            order_bad is None,
            ""
            if order_bad is None
            else f"incomparable pair {_fmt_ball(space, balls[order_bad[0]])}, "
            f"{_fmt_ball(space, balls[order_bad[1]])}",
        )
    )

    radii = [b.radius for b in balls]
    stalled = len(set(radii)) == 1 and radii[0] <= space.R and n > 1
    for i, b in enumerate(balls):
        if b.radius > space.R:
            continue
        if not any(r < b.radius for r in radii):
            tail += 1
    clauses.append(
        ClauseResult(
            "strictly-smaller-radius",
            not stalled,
            ""
            if not stalled
            else f"radius never decreases below {radii[0]} <= R; witness "
            f"{_fmt_ball(space, balls[0])}",
        )
    )

    centers = [b.center for b in balls[: min(n, samples)]]
    ok_large = all(
        filter_member(filt, FormalBall(c, space.R + Fraction(1, j)), depth)
        for j in range(1, samples + 1)
        for c in centers
    )
    clauses.append(
        ClauseResult(
            "large-radius-membership",
            ok_large,
            "" if ok_large else "ball of radius > R rejected",
        )
    )

    ok = all(c.ok for c in clauses)
    return FilterLawReport(ok, tuple(clauses), unverified_tail=tail)
