"""Classification of bounded multiplicative seminorms on Z, and canonical
forms of filters over trivially valued fields.

The integer classifier works from a finite oracle interface: queries
``(n, q) -> bool`` meaning "the seminorm of n is known below q".  Stage
1 looks for a prime that fails positive definiteness (the residue
case); stage 2 separates the archimedean, p-adic and trivial shapes and
encloses the exponent.

Exponent recovery never touches floating point:

* archimedean: bisection on the value at 2**N via pure integer-power
  comparisons, N = 2**21, giving a dyadic enclosure of width 1/N;
* p-adic: bisection in probe space with exact rational logarithm
  enclosures (atanh series with certified tails).  Integer power
  ladders p**N are useless here for large p, so precision is carried by
  the probe rationals instead of the queried integer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Any, Callable, Union

from .ballspace import DiscPoint, RGoodFilter, filter_radius
from .errors import NotAFilter, OracleInconsistent, SemanticError
from .exactnum import DEFAULT_DEPTH, UpperReal, to_exact, upper_lt
from .fields import TrivialQ

# ---------------------------------------------------------------------------
# seminorm shapes on Z


@dataclass(frozen=True)
class Trivial:
    pass


@dataclass(frozen=True)
class ArchPower:
    """|n| = |n|_oo ** alpha with alpha in (0, 1]."""

    alpha: Fraction

    def __post_init__(self) -> None:
        a = Fraction(self.alpha)
        if not 0 < a <= 1:
            raise ValueError("archimedean exponent must lie in (0, 1]")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class PAdicPower:
    """|n| = |n|_p ** alpha with alpha > 0."""

    p: int
    alpha: Fraction

    def __post_init__(self) -> None:
        a = Fraction(self.alpha)
        if a <= 0:
            raise ValueError("p-adic exponent must be > 0")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class ResidueTrivial:
    """|n| = 0 if p | n, else 1 (trivial seminorm through F_p)."""

    p: int


IntegerSeminormSpec = Union[Trivial, ArchPower, PAdicPower, ResidueTrivial]


def spec_kind(spec: IntegerSeminormSpec) -> str:
    return {
        Trivial: "trivial",
        ArchPower: "arch-power",
        PAdicPower: "padic-power",
        ResidueTrivial: "residue-trivial",
    }[type(spec)]


# ---------------------------------------------------------------------------
# integer helpers


def _primes_up_to(n: int) -> list[int]:
    sieve = bytearray([1]) * (n + 1)
    sieve[:2] = b"\x00\x00"
    for i in range(2, isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(n + 1) if sieve[i]]


def _valuation(n: int, p: int) -> int:
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


def _iroot(n: int, t: int) -> int:
    """floor(n ** (1/t)) for n >= 0, t >= 1."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0 or t == 1:
        return n
    x = 1 << (-(-n.bit_length() // t))
    while True:
        y = ((t - 1) * x + n // x ** (t - 1)) // t
        if y >= x:
            break
        x = y
    while x**t > n:
        x -= 1
    while (x + 1) ** t <= n:
        x += 1
    return x


def _pow_enclosure(base: Fraction, e: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational interval of width <= width containing base**e, base > 0."""
    s, t = e.numerator, e.denominator
    x = base**s
    if t == 1:
        return x, x
    rn, rd = _iroot(x.numerator, t), _iroot(x.denominator, t)
    if rn**t == x.numerator and rd**t == x.denominator:
        r = Fraction(rn, rd)
        return r, r
    lo, hi = Fraction(0), max(Fraction(1), x)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid**t <= x:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """The simplest rational strictly inside (lo, hi), 0 <= lo < hi."""
    if not 0 <= lo < hi:
        raise ValueError("need 0 <= lo < hi")
    prefix: list[int] = []
    a, b = lo, hi
    while True:
        n = a.numerator // a.denominator
        if Fraction(n + 1) < b:
            result = Fraction(n + 1)
            break
        if a == n:
            y = 1 / (b - n)
            result = n + Fraction(1, y.numerator // y.denominator + 1)
            break
        prefix.append(n)
        a, b = 1 / (b - n), 1 / (a - n)
    for n in reversed(prefix):
        result = n + 1 / result
    return result


# ---------------------------------------------------------------------------
# exact logarithm enclosures


def _atanh_bounds(y: Fraction, terms: int) -> tuple[Fraction, Fraction]:
    # sum y^(2i+1)/(2i+1), 0 <= y < 1, with an exact geometric tail bound
    s = Fraction(0)
    yk = y
    y2 = y * y
    for i in range(terms):
        s += yk / (2 * i + 1)
        yk *= y2
    tail = yk / ((2 * terms + 1) * (1 - y2))
    return s, s + tail


_LN2_LO, _LN2_HI = (2 * v for v in _atanh_bounds(Fraction(1, 3), 24))


def _ln_enclosure(x: Fraction, terms: int = 20) -> tuple[Fraction, Fraction]:
    """Exact rational bounds on ln(x), x > 0."""
    if x <= 0:
        raise ValueError("ln of nonpositive value")
    if x == 1:
        return Fraction(0), Fraction(0)
    if x < 1:
        lo, hi = _ln_enclosure(1 / x, terms)
        return -hi, -lo
    e = 0
    m = x
    while m >= 2:
        m /= 2
        e += 1
    y = (m - 1) / (m + 1)
    lo, hi = (2 * v for v in _atanh_bounds(y, terms))
    return lo + e * _LN2_LO, hi + e * _LN2_HI


def _approx_power_mean(
    a: Fraction, b: Fraction, i: int, j: int
) -> tuple[Fraction, Fraction]:
    """Under/over approximations of (a**i * b**j) ** (1/(i+j)), a, b > 0.

    Relative error is about 2**-62, enough to steer a bisection; the
    certified reasoning never relies on these values.
    """
    t = i + j
    num = a.numerator**i * b.numerator**j
    den = a.denominator**i * b.denominator**j
    mag = num.bit_length() - den.bit_length()
    k = max(0, 64 - mag // t)
    n = (num << (t * k)) // den
    r = _iroot(n, t)
    return Fraction(r, 1 << k), Fraction(r + 2, 1 << k)


# ---------------------------------------------------------------------------
# oracles


class SeminormOracle:
    """Interface to an unknown bounded multiplicative seminorm on Z.

    ``query(n, q)`` answers whether |n| < q; answers must be monotone in
    q.  Multiplicative consistency is the provider's burden.
    """

    def query(self, n: int, q: Fraction) -> bool:
        raise NotImplementedError


class SynthesizedOracle(SeminormOracle):
    """Oracle answering exactly according to a declared shape."""

    def __init__(self, spec: IntegerSeminormSpec) -> None:
        self.spec = spec

    def query(self, n: int, q: Fraction) -> bool:
        q = Fraction(q)
        if q <= 0:
            return False
        spec = self.spec
        if isinstance(spec, Trivial):
            return (Fraction(0) if n == 0 else Fraction(1)) < q
        if isinstance(spec, ResidueTrivial):
            return (Fraction(0) if n % spec.p == 0 else Fraction(1)) < q
        if isinstance(spec, PAdicPower):
            if n == 0:
                return True
            v = _valuation(n, spec.p)
            if v == 0:
                return Fraction(1) < q
            # p^(-v*s/t) < q  <=>  q^t * p^(v*s) > 1
            s, t = spec.alpha.numerator, spec.alpha.denominator
            e = v * s
            power = (1 << e) if spec.p == 2 else spec.p**e
            return q.numerator**t * power > q.denominator**t
        # archimedean power: |n|^(s/t) < q  <=>  |n|^s * q.den^t < q.num^t
        if n == 0:
            return True
        s, t = spec.alpha.numerator, spec.alpha.denominator
        return abs(n) ** s * q.denominator**t < q.numerator**t


class TableOracle(SeminormOracle):
    """Recorded (n, q) -> bool triples, with an optional synthesized
    fallback for unrecorded queries."""

    def __init__(
        self,
        answers: dict[tuple[int, Fraction], bool],
        fallback: SeminormOracle | None = None,
    ) -> None:
        self.answers = dict(answers)
        self.fallback = fallback

    def query(self, n: int, q: Fraction) -> bool:
        key = (n, Fraction(q))
        if key in self.answers:
            return self.answers[key]
        if self.fallback is None:
            raise OracleInconsistent(
                f"oracle not a seminorm: fixture cannot answer ({n}, {q})"
            )
        return self.fallback.query(n, q)


def make_oracle(spec: IntegerSeminormSpec) -> SynthesizedOracle:
    return SynthesizedOracle(spec)


class _Guard:
    """Wraps an oracle, checking monotonicity of answers in q."""

    def __init__(self, oracle: SeminormOracle | Callable[[int, Fraction], bool]) -> None:
        self._ask = oracle.query if isinstance(oracle, SeminormOracle) else oracle
        self._least_true: dict[int, Fraction] = {}
        self._greatest_false: dict[int, Fraction] = {}

    def __call__(self, n: int, q: Fraction) -> bool:
        q = Fraction(q)
        ans = bool(self._ask(n, q))
        if ans:
            prev = self._least_true.get(n)
            if prev is None or q < prev:
                self._least_true[n] = q
        else:
            prev = self._greatest_false.get(n)
            if prev is None or q > prev:
                self._greatest_false[n] = q
        t = self._least_true.get(n)
        f = self._greatest_false.get(n)
        if t is not None and f is not None and t <= f:
            raise OracleInconsistent("oracle not a seminorm")
        return ans


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class Classification:
    kind: str  # trivial | residue-trivial | arch-power | padic-power | unclassifiable
    p: int | None = None
    alpha_lo: Fraction | None = None
    alpha_hi: Fraction | None = None
    note: str = ""

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "Trivial"
        if self.kind == "residue-trivial":
            return f"ResidueTrivial({self.p})"
        if self.kind == "arch-power":
            return f"ArchPower(alpha in [{self.alpha_lo}, {self.alpha_hi}])"
        if self.kind == "padic-power":
            return f"PAdicPower({self.p}, alpha in [{self.alpha_lo}, {self.alpha_hi}])"
        return f"Unclassifiable({self.note})"

    def contains_alpha(self, alpha: Fraction) -> bool:
        if self.alpha_lo is None or self.alpha_hi is None:
            return False
        return self.alpha_lo <= alpha <= self.alpha_hi


_ARCH_GRID = 1 << 21  # > 10**6, so the dyadic enclosure is tighter than 1e-6
_ARCH_GRID_MAX = 1 << 26  # probes are 2**N-bit integers; keep them < 10 MB


def _enclose_alpha_arch(
    ask: Callable[[int, Fraction], bool], width: Fraction
) -> tuple[Fraction, Fraction] | None:
    N = _ARCH_GRID
    while Fraction(1, N) > width:
        N <<= 1
        if N > _ARCH_GRID_MAX:
            raise ValueError(
                f"archimedean exponent enclosures support widths down to "
                f"1/{_ARCH_GRID_MAX}, requested {width}"
            )
    big = 1 << N  # 2**N; |2**N| = 2**(N*alpha), compared against powers of two
    if not ask(big, Fraction(1 << (N + 1))):
        return None  # alpha > 1 + 1/N: not an admissible archimedean power
    lo_m, hi_m = 0, N + 1  # invariant: alpha in [lo_m/N, hi_m/N)
    while hi_m - lo_m > 1:
        mid = (lo_m + hi_m) // 2
        if ask(big, Fraction(1 << mid)):
            hi_m = mid
        else:
            lo_m = mid
    lo = Fraction(lo_m, N)
    hi = min(Fraction(hi_m, N), Fraction(1))
    return lo, max(lo, hi)


def _enclose_alpha_padic(
    ask: Callable[[int, Fraction], bool], p: int, width: Fraction
) -> tuple[Fraction, Fraction] | None:
    """Enclose alpha from queries on the single integer p.

    tau(q) = -log_p(q) is dense in the positive reals as q ranges over
    the rationals in (0, 1], so all precision is carried by the probe.
    Invariant: alpha in (tau(qB), tau(qA)] with qA < qB <= 1; True
    answers move qB down, False answers move qA up, and probes sit near
    the geometric mean so the log-width halves.
    """
    M = 1
    while ask(p, Fraction(1, p**M)):  # True <=> alpha > M
        M *= 2
        if M > 1 << 10:
            return None
    qA, qB = Fraction(1, p**M), Fraction(1)
    target = width * Fraction(7, 10)
    while True:
        r = qB / qA
        if (r - 1) * Fraction(p, p - 1) <= target:  # ln r / ln p <= width bound
            break
        w_lo = max(qA, _approx_power_mean(qA, qB, 3, 1)[0])
        w_hi = min(qB, _approx_power_mean(qA, qB, 1, 3)[1])
        if not w_lo < w_hi:
            w_lo, w_hi = qA, qB
        probe = _simplest_between(w_lo, w_hi)
        if ask(p, probe):
            qB = probe
        else:
            qA = probe
    lnp_lo, lnp_hi = _ln_enclosure(Fraction(p))
    lnA_lo, lnA_hi = _ln_enclosure(1 / qA)
    lnB_lo, lnB_hi = _ln_enclosure(1 / qB)
    lo = max(Fraction(0), lnB_lo / lnp_hi)  # <= tau(qB)
    hi = lnA_hi / lnp_lo  # >= tau(qA)
    # round outward onto a coarse grid so the endpoints stay readable
    grid = 16 * width.denominator // width.numerator + 1
    lo = Fraction(lo.numerator * grid // lo.denominator, grid)
    hi = -Fraction((-hi.numerator) * grid // hi.denominator, grid)
    if hi - lo > width:
        raise AssertionError("alpha enclosure wider than requested")
    return max(Fraction(0), lo), hi


def classify_integer_seminorm(
    oracle: SeminormOracle | Callable[[int, Fraction], bool],
    prime_bound: int = 50,
    precision: Fraction = Fraction(1, 10**6),
) -> Classification:
    """Recover the shape of the seminorm behind the oracle.

    Raises OracleInconsistent when answers are not monotone in q.  When
    the answers are consistent but match none of the known shapes within
    the probed bounds, an ``unclassifiable`` result is returned instead
    of a guess.
    """
    if prime_bound < 3:
        raise ValueError("prime_bound must be >= 3")
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be > 0")
    ask = _Guard(oracle)
    primes = _primes_up_to(prime_bound)

    # Stage 1: a prime with |p| below every probed threshold generates
    # the kernel, giving the residue-trivial seminorm at p.
    for p in primes:
        if all(ask(p, precision / (1 << k)) for k in (0, 10, 20)):
            return Classification("residue-trivial", p=p)

    # Stage 2: split on the position of |p| relative to 1.
    eps = min(precision, Fraction(1, 10**6))
    above = [p for p in primes if not ask(p, 1 + eps)]
    below = [p for p in primes if ask(p, Fraction(1))]
    if above and below:
        return Classification(
            "unclassifiable", note="primes both above and below 1"
        )
    if above:
        got = _enclose_alpha_arch(ask, precision)
        if got is None:
            return Classification(
                "unclassifiable", note="archimedean exponent out of range"
            )
        return Classification("arch-power", alpha_lo=got[0], alpha_hi=got[1])
    if len(below) > 1:
        return Classification(
            "unclassifiable", note=f"multiple primes below 1: {below}"
        )
    if len(below) == 1:
        p = below[0]
        got = _enclose_alpha_padic(ask, p, precision)
        if got is None:
            return Classification(
                "unclassifiable", note="p-adic exponent out of range"
            )
        return Classification("padic-power", p=p, alpha_lo=got[0], alpha_hi=got[1])
    return Classification("trivial")


def eval_integer_spec(
    spec: IntegerSeminormSpec, n: int, precision: Fraction
) -> tuple[Fraction, Fraction]:
    """Rational interval of width <= precision containing |n| under spec."""
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be > 0")
    if isinstance(spec, Trivial):
        v = Fraction(0) if n == 0 else Fraction(1)
        return v, v
    if isinstance(spec, ResidueTrivial):
        v = Fraction(0) if n % spec.p == 0 else Fraction(1)
        return v, v
    if n == 0:
        return Fraction(0), Fraction(0)
    if isinstance(spec, PAdicPower):
        v = _valuation(n, spec.p)
        return _pow_enclosure(Fraction(spec.p), -v * spec.alpha, precision)
    return _pow_enclosure(Fraction(abs(n)), spec.alpha, precision)


# ---------------------------------------------------------------------------
# canonical forms over trivially valued fields


@dataclass(frozen=True)
class RadiusOnly:
    radius: UpperReal


@dataclass(frozen=True)
class RadiusAndCenter:
    radius: UpperReal
    center: Any


@dataclass(frozen=True)
class Undetermined:
    """Frontier report: the radius position relative to 1 is not
    established at this depth."""

    depth: int


TrivialCanonicalForm = Union[RadiusOnly, RadiusAndCenter, Undetermined]


def canonicalize_trivial(
    filt: RGoodFilter, depth: int = DEFAULT_DEPTH
) -> TrivialCanonicalForm:
    """Canonical form of a filter over a trivially valued field.

    For R < 1 the ambient K_R is {0} and the radius determines the
    filter.  For R >= 1, radii >= 1 again leave only the radius, while a
    radius provably < 1 pins a unique sub-unit center; two distinct
    sub-unit centers disprove filterhood.
    """
    space = filt.space
    if not isinstance(space.field, TrivialQ):
        raise SemanticError("canonical forms require a trivially valued field")
    rad = filter_radius(filt)
    if space.R < 1:
        return RadiusOnly(rad)
    v = to_exact(rad, depth)
    if v is not None and v >= 1:
        return RadiusOnly(rad)
    if upper_lt(rad, Fraction(1), depth):
        return RadiusAndCenter(rad, _sub_unit_center(filt, depth))
    return Undetermined(depth)


def _sub_unit_center(filt: RGoodFilter, depth: int) -> Any:
    gen = filt.generator
    field = filt.space.field
    if isinstance(gen, DiscPoint):
        return gen.center
    n = depth + 1
    if gen.prefix_len is not None:
        n = min(n, gen.prefix_len)
    centers: list[Any] = []
    for i in range(n):
        ball = gen.ball_at(i)
        if ball.radius <= 1 and not any(field.eq(ball.center, c) for c in centers):
            centers.append(ball.center)
    if len(centers) > 1:
        a, b = (field.format_element(c) for c in centers[:2])
        raise NotAFilter(f"not a filter: distinct sub-unit centers {a} and {b}")
    if not centers:
        raise NotAFilter("not a filter: no sub-unit generator in scope")
    return centers[0]


# ---------------------------------------------------------------------------
# oracle fixtures (CLI surface)


def spec_from_dict(d: dict) -> IntegerSeminormSpec:
    kind = d.get("kind")
    if kind == "trivial":
        return Trivial()
    if kind == "residue-trivial":
        return ResidueTrivial(int(d["p"]))
    if kind == "arch-power":
        return ArchPower(Fraction(str(d["alpha"])))
    if kind == "padic-power":
        return PAdicPower(int(d["p"]), Fraction(str(d["alpha"])))
    raise SemanticError(f"unknown oracle generator kind: {kind!r}")


def oracle_from_fixture(data: dict) -> SeminormOracle:
    """Build an oracle from the fixture format: recorded (n, q, bool)
    triples plus an optional declared generator for everything else."""
    base = None
    if data.get("generator"):
        base = make_oracle(spec_from_dict(data["generator"]))
    answers: dict[tuple[int, Fraction], bool] = {}
    for n, qs, ans in data.get("answers", []):
        answers[(int(n), Fraction(str(qs)))] = bool(ans)
    if not answers and base is not None:
        return base
    return TableOracle(answers, base)


BUILTIN_FIXTURES: dict[str, dict] = {
    "trivial": {"generator": {"kind": "trivial"}},
    "residue3": {"generator": {"kind": "residue-trivial", "p": 3}},
    "padic2_alpha1": {"generator": {"kind": "padic-power", "p": 2, "alpha": "1"}},
    "padic3_alpha_half": {"generator": {"kind": "padic-power", "p": 3, "alpha": "1/2"}},
    "arch_alpha1": {"generator": {"kind": "arch-power", "alpha": "1"}},
    "arch_alpha_half": {"generator": {"kind": "arch-power", "alpha": "1/2"}},
}


def load_fixture(name_or_path: str) -> SeminormOracle:
    if name_or_path in BUILTIN_FIXTURES:
        return oracle_from_fixture(BUILTIN_FIXTURES[name_or_path])
    with open(name_or_path, "r", encoding="utf-8") as fh:
        return oracle_from_fixture(json.load(fh))
