"""Exact rationals and computable upper reals.

Every seminorm value produced by this library is an *upper real*: an
upward-closed, rounded set of rationals, i.e. a number known only from
above.  Three representations cover everything we construct:

* ``Exact(v)`` denotes the right section ``{q : q > v}`` of a rational.
* ``Top()`` denotes the empty cut (+infinity, nothing is known).
* ``Stream(f)`` denotes the infimum of a non-increasing, depth-indexed
  sequence of rational (or +inf) bounds.

Equality of upper reals is never decided.  Callers compare values
through :func:`upper_lt` against rational probes at a chosen depth: a
``True`` answer is sound for the semantic value, a ``False`` answer only
means "not known yet at this depth".  All values here are nonnegative in
library use (they arise as norms), although nothing below enforces it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence, Union

#: Probe depth used when callers do not pick one.  Every shipped example
#: stabilises far earlier; raise it per call for adversarial inputs.
DEFAULT_DEPTH = 64


class PlusInfinity:
    """+inf, strictly above every rational.  Use the :data:`INF` singleton."""

    _instance = None

    def __new__(cls) -> "PlusInfinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return other is self

    def __gt__(self, other: object) -> bool:
        return other is not self

    def __ge__(self, other: object) -> bool:
        return True

    def __repr__(self) -> str:
        return "+inf"


INF = PlusInfinity()

#: A rational bound, or +inf when no bound is known.
ExtRational = Union[Fraction, PlusInfinity]


def ext_min(a: ExtRational, b: ExtRational) -> ExtRational:
    if a is INF:
        return b
    if b is INF:
        return a
    return min(a, b)


def ext_max(a: ExtRational, b: ExtRational) -> ExtRational:
    if a is INF or b is INF:
        return INF
    return max(a, b)


def ext_scale(c: Fraction, a: ExtRational) -> ExtRational:
    """c * a for c >= 0, with 0 * inf = 0."""
    if c == 0:
        return Fraction(0)
    if a is INF:
        return INF
    return c * a


class UpperReal:
    """Base class.  The semantic value is the infimum of all bounds."""

    def bound_at(self, depth: int) -> ExtRational:
        raise NotImplementedError


@dataclass(frozen=True)
class Exact(UpperReal):
    """The right section ``{q : q > value}`` of a rational."""

    value: Fraction

    def __post_init__(self) -> None:
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    def bound_at(self, depth: int) -> ExtRational:
        return self.value


class Top(UpperReal):
    """The empty cut: no rational bound ever becomes known."""

    def bound_at(self, depth: int) -> ExtRational:
        return INF

    def __repr__(self) -> str:
        return "Top()"


class Stream(UpperReal):
    """Bounds given by a pure, non-increasing depth-indexed function.

    ``stable_from`` is an optional stabilisation certificate: when set,
    the construction guarantees ``bounds(d) == bounds(stable_from)`` for
    every ``d >= stable_from``, which lets :func:`to_exact` extract the
    value.  Bound functions must be pure (no hidden cursor); results are
    memoised per depth, so sharing a Stream between threads is safe.
    """

    def __init__(
        self,
        bounds: Callable[[int], ExtRational],
        stable_from: int | None = None,
    ) -> None:
        self._bounds = bounds
        self.stable_from = stable_from
        self._cache: dict[int, ExtRational] = {}

    def bound_at(self, depth: int) -> ExtRational:
        if depth < 0:
            raise ValueError("depth must be >= 0")
        if self.stable_from is not None:
            depth = min(depth, self.stable_from)
        got = self._cache.get(depth)
        if got is None:
            got = self._bounds(depth)
            self._cache[depth] = got
        return got

    def __repr__(self) -> str:
        return f"Stream(bound0={self.bound_at(0)!r}, stable_from={self.stable_from})"


def _stable_index(x: UpperReal) -> int | None:
    """Depth from which x's bounds are certified constant, if any."""
    if isinstance(x, (Exact, Top)):
        return 0
    if isinstance(x, Stream):
        return x.stable_from
    return None


def upper_lt(x: UpperReal, q: Fraction | int, depth: int = DEFAULT_DEPTH) -> bool:
    """Semi-decide ``x < q``.

    True is sound for the semantic value and is monotone in depth;
    False means the relation is not established at this depth.  Bounds
    are non-increasing, so only the bound at ``depth`` is consulted.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if not isinstance(q, Fraction):
        q = Fraction(q)
    return x.bound_at(depth) < q


def upper_max(x: UpperReal, y: UpperReal) -> UpperReal:
    """Pointwise max, i.e. the intersection of the two cuts.

    ``Exact(0)`` is the bottom of the nonnegative upper reals and acts
    as an identity here.
    """
    if isinstance(x, Exact) and x.value == 0:
        return y
    if isinstance(y, Exact) and y.value == 0:
        return x
    if isinstance(x, Exact) and isinstance(y, Exact):
        return Exact(max(x.value, y.value))
    if isinstance(x, Top) or isinstance(y, Top):
        return Top()
    sx, sy = _stable_index(x), _stable_index(y)
    stable = max(sx, sy) if (sx is not None and sy is not None) else None
    return Stream(lambda d: ext_max(x.bound_at(d), y.bound_at(d)), stable_from=stable)


def upper_scale(c: Fraction | int, x: UpperReal) -> UpperReal:
    """c * x for a rational scalar c >= 0; scaling by 0 annihilates Top."""
    if not isinstance(c, Fraction):
        c = Fraction(c)
    if c < 0:
        raise ValueError("scale factor must be >= 0")
    if c == 0:
        return Exact(Fraction(0))
    if isinstance(x, Exact):
        return Exact(c * x.value)
    if isinstance(x, Top):
        return Top()
    return Stream(lambda d: ext_scale(c, x.bound_at(d)), stable_from=_stable_index(x))


def upper_inf(
    xs: Sequence[UpperReal] | Callable[[int], UpperReal],
) -> UpperReal:
    """Infimum of a finite family or of a depth-indexed stream of upper reals.

    A finite family of Exacts collapses to ``Exact(min)``.  For a stream
    (a callable ``index -> UpperReal``), the bound at depth d is the
    minimum over the first d+1 members' depth-d bounds.
    """
    if callable(xs):
        return Stream(lambda d: _stream_inf_bound(xs, d))
    members = list(xs)
    if not members:
        raise ValueError("inf of empty family")
    if len(members) == 1:
        return members[0]
    if all(isinstance(m, Exact) for m in members):
        return Exact(min(m.value for m in members))
    if all(isinstance(m, Top) for m in members):
        return Top()
    stables = [_stable_index(m) for m in members]
    stable = max(stables) if all(s is not None for s in stables) else None

    def bound(d: int) -> ExtRational:
        acc: ExtRational = INF
        for m in members:
            acc = ext_min(acc, m.bound_at(d))
        return acc

    return Stream(bound, stable_from=stable)


def _stream_inf_bound(xs: Callable[[int], UpperReal], d: int) -> ExtRational:
    acc: ExtRational = INF
    for i in range(d + 1):
        acc = ext_min(acc, xs(i).bound_at(d))
    return acc


def to_exact(x: UpperReal, depth: int = DEFAULT_DEPTH) -> Fraction | None:
    """Extract the rational value when the construction certifies it.

    Works for ``Exact`` and for Streams whose stabilisation index lies
    within ``depth``.  A merely non-increasing stream carries no
    certificate and yields ``None`` regardless of how far it is probed.
    """
    if isinstance(x, Exact):
        return x.value
    if isinstance(x, Stream) and x.stable_from is not None and x.stable_from <= depth:
        b = x.bound_at(x.stable_from)
        if isinstance(b, Fraction):
            return b
    return None
