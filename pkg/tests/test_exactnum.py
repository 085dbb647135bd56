from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from ultraball.exactnum import (
    INF,
    Exact,
    Stream,
    Top,
    ext_min,
    to_exact,
    upper_inf,
    upper_lt,
    upper_max,
    upper_scale,
)

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=16)
nonneg = st.fractions(min_value=0, max_value=8, max_denominator=16)


def harmonic_stream(limit: F):
    """Bounds limit + 1/(d+1), a genuinely decreasing stream with value limit."""
    return Stream(lambda d: limit + F(1, d + 1))


def denoted_cut(x, probes, depth):
    """Brute-force denotation restricted to a probe set."""
    return {q for q in probes if upper_lt(x, q, depth)}


# -- upper_lt ---------------------------------------------------------------


def test_upper_lt_exact():
    assert upper_lt(Exact(F(1)), F(2), 0)
    # the right section is strict: 1 is not a member of {q : q > 1}
    assert not upper_lt(Exact(F(1)), F(1), 0)
    assert not upper_lt(Exact(F(1)), F(1), 100)


def test_upper_lt_stream_uses_depth_bound():
    x = Stream(lambda d: [F(3), F(2), F(3, 2)][d] if d < 3 else F(1))
    assert upper_lt(x, F(7, 4), 2)  # bound at depth 2 is 3/2 < 7/4
    assert not upper_lt(x, F(7, 4), 0)


def test_upper_lt_top_never_yes():
    assert not upper_lt(Top(), F(10**9), 50)


@given(nonneg, st.fractions(min_value=-4, max_value=12, max_denominator=8),
       st.integers(min_value=0, max_value=12), st.integers(min_value=0, max_value=12))
def test_monotone_soundness(limit, q, d1, d2):
    x = harmonic_stream(limit)
    if d1 > d2:
        d1, d2 = d2, d1
    if upper_lt(x, q, d1):
        assert upper_lt(x, q, d2)


@given(nonneg, st.fractions(min_value=-4, max_value=12, max_denominator=8),
       st.integers(min_value=0, max_value=12))
def test_roundedness(limit, q, d):
    x = harmonic_stream(limit)
    if upper_lt(x, q, d):
        witness = x.bound_at(d)
        q2 = (witness + q) / 2
        assert q2 < q
        assert upper_lt(x, q2, d)


# -- upper_max --------------------------------------------------------------


def test_upper_max_examples():
    assert upper_max(Exact(F(1)), Exact(F(1, 2))) == Exact(F(1))
    y = harmonic_stream(F(3))
    assert upper_max(Exact(F(0)), y) is y  # 0 is the bottom of the nonneg uppers
    z = upper_max(Stream(lambda d: [F(2), F(3, 2)][d] if d < 2 else F(1)),
                  Exact(F(5, 4)))
    assert z.bound_at(0) == F(2)
    assert z.bound_at(5) == F(5, 4)


@given(nonneg, nonneg, st.integers(min_value=0, max_value=10))
def test_upper_max_agrees_with_cut_intersection(a, b, depth):
    probes = [F(n, 4) for n in range(-2, 40)]
    x, y = Exact(a), Exact(b)
    got = denoted_cut(upper_max(x, y), probes, depth)
    want = denoted_cut(x, probes, depth) & denoted_cut(y, probes, depth)
    assert got == want


# -- upper_scale ------------------------------------------------------------


def test_upper_scale_examples():
    assert upper_scale(F(0), Top()) == Exact(F(0))  # annihilation
    assert upper_scale(F(2), Exact(F(3, 2))) == Exact(F(3))
    s = upper_scale(F(1, 2), harmonic_stream(F(1)))
    assert s.bound_at(0) == F(1)
    assert s.bound_at(9) == F(1, 2) * (F(1) + F(1, 10))


def test_upper_scale_rejects_negative():
    with pytest.raises(ValueError):
        upper_scale(F(-1), Exact(F(1)))


@given(nonneg, nonneg, nonneg, st.integers(min_value=0, max_value=8))
def test_scale_distributes_over_max(c, a, b, depth):
    probes = [F(n, 8) for n in range(0, 80)]
    lhs = upper_scale(c, upper_max(Exact(a), Exact(b)))
    rhs = upper_max(upper_scale(c, Exact(a)), upper_scale(c, Exact(b)))
    assert denoted_cut(lhs, probes, depth) == denoted_cut(rhs, probes, depth)


# -- upper_inf --------------------------------------------------------------


def test_upper_inf_examples():
    assert upper_inf([Exact(F(3)), Exact(F(2)), Exact(F(5))]) == Exact(F(2))
    x = harmonic_stream(F(1))
    assert upper_inf([x]) is x  # singleton
    s = upper_inf(lambda i: Exact(F(1) + F(1, i + 1)))
    assert s.bound_at(0) == F(2)
    assert s.bound_at(9) == F(1) + F(1, 10)


def test_upper_inf_empty_rejected():
    with pytest.raises(ValueError, match="inf of empty family"):
        upper_inf([])


@given(st.lists(nonneg, min_size=1, max_size=6), st.integers(min_value=0, max_value=8))
def test_upper_inf_agrees_with_cut_union(values, depth):
    probes = [F(n, 4) for n in range(0, 40)]
    xs = [Exact(v) for v in values]
    got = denoted_cut(upper_inf(xs), probes, depth)
    want = set()
    for x in xs:
        want |= denoted_cut(x, probes, depth)
    assert got == want


def test_upper_inf_mixed_keeps_stream_with_certificate():
    x = upper_inf([Exact(F(2)), Stream(lambda d: F(3), stable_from=0)])
    assert to_exact(x, depth=0) == F(2)


# -- to_exact ---------------------------------------------------------------


def test_to_exact_examples():
    assert to_exact(Exact(F(1, 2)), 0) == F(1, 2)
    certified = Stream(lambda d: F(5, 7), stable_from=0)
    assert to_exact(certified, 0) == F(5, 7)
    decreasing = harmonic_stream(F(0))
    assert to_exact(decreasing, 10) is None
    assert to_exact(Top(), 10) is None


def test_to_exact_respects_depth():
    late = Stream(lambda d: F(1) if d >= 4 else F(2), stable_from=4)
    assert to_exact(late, 2) is None
    assert to_exact(late, 4) == F(1)


# -- ext rationals ----------------------------------------------------------


def test_inf_ordering():
    assert F(10**12) < INF
    assert not INF < F(10**12)
    assert INF <= INF
    assert ext_min(INF, F(3)) == F(3)
    assert ext_min(INF, INF) is INF
