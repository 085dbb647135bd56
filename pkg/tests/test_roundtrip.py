import random
from fractions import Fraction as F

from ultraball.ballspace import FormalBall, Space
from ultraball.exactnum import to_exact, upper_lt
from ultraball.roundtrip import (
    induced_seminorm_lin,
    max_modulus_oracle,
    seminorm_to_filter,
    verify_roundtrip_filter,
    verify_roundtrip_seminorm,
)
from ultraball.seminorms import FilterSeminorm, LinPoly, poly_from_roots, make_poly

from conftest import random_element, random_in_K_R


def test_view_membership_matches_construction(padic2):
    sp = Space(padic2, F(1))
    x = FilterSeminorm(sp.disc_point(F(0), F(1, 2)))
    view = seminorm_to_filter(x)
    assert view.member(F(0), F(3, 4), 0)
    # strictness at the limit radius, at any depth
    assert not view.member(F(0), F(1, 2), 64)
    # bounded seminorm accepts every radius above R at depth 0
    for k in (F(0), F(1), F(2)):
        assert view.member(k, F(2), 0)


def test_induced_value_reconstructs_disc_point(padic2):
    sp = Space(padic2, F(1))
    x = FilterSeminorm(sp.disc_point(F(0), F(1, 2)))
    view = seminorm_to_filter(x)
    one = F(1)
    got = induced_seminorm_lin(view, LinPoly(one, F(0)))
    # the reconstruction narrows onto 1/2 from above through dyadic grids
    assert got.bound_at(1) == F(1)       # halves: least grid point above 1/2
    assert got.bound_at(2) == F(3, 4)    # quarters
    assert got.bound_at(6) == F(1, 2) + F(1, 64)
    assert upper_lt(got, F(9, 16), 6)
    assert not upper_lt(got, F(1, 2), 20)


def test_induced_value_constant_and_forced_branches(padic2):
    sp = Space(padic2, F(1))
    x = FilterSeminorm(sp.disc_point(F(0), F(1, 2)))
    view = seminorm_to_filter(x)
    got = induced_seminorm_lin(view, LinPoly(F(0), F(7)))
    assert to_exact(got, 0) == F(1)
    # center b/a outside K_R (|1/2|_2 = 2 > R) is forced to |b|
    got = induced_seminorm_lin(view, LinPoly(F(1), F(1, 2)))
    assert to_exact(got, 0) == F(2)


def _probes(field, space, centers):
    one = field.one()
    two = field.element_from_rational(F(2))
    lins = [LinPoly(one, c) for c in centers]
    lins += [LinPoly(two, c) for c in centers]
    lins.append(LinPoly(field.zero(), one))
    qs = [space.R * F(n, 8) for n in (1, 2, 3, 4, 8, 12, 16)]
    return [(f, q) for f in lins for q in qs]


def test_roundtrip_seminorm_disc_points_no_disagreement():
    from conftest import all_fields

    rng = random.Random(2024)
    for field in all_fields():
        for R in (F(1, 2), F(1), F(2)):
            sp = Space(field, R)
            for _ in range(4):
                k = random_in_K_R(field, rng, R)
                r = F(rng.randint(0, 4)) * R / 4
                x = FilterSeminorm(sp.disc_point(k, r))
                centers = [field.zero(), k, random_in_K_R(field, rng, R)]
                report = verify_roundtrip_seminorm(x, _probes(field, sp, centers), 64)
                assert report.ok, report.disagreements


def test_roundtrip_filter_disc_points_no_disagreement(padic2):
    sp = Space(padic2, F(1))
    filt = sp.disc_point(F(0), F(1, 2))
    balls = [
        FormalBall(c, q)
        for c in (F(0), F(1), F(2))
        for q in (F(1, 4), F(1, 2), F(3, 4), F(1), F(3, 2), F(2))
    ]
    report = verify_roundtrip_filter(filt, balls, 64)
    assert report.ok, report.disagreements
    # at the limit radius both sides must answer no
    boundary = verify_roundtrip_filter(filt, [FormalBall(F(0), F(1, 2))], 64)
    assert boundary.ok


def test_roundtrip_chain_filter(padic2):
    sp = Space(padic2, F(1))
    filt = sp.chain(lambda i: FormalBall(F(0), F(1, 2**i)))
    # probe radii sit strictly between generator radii so both sides agree
    balls = [FormalBall(F(0), F(3, 2**i)) for i in range(1, 6)]
    report = verify_roundtrip_filter(filt, balls, 32)
    assert report.ok, report.disagreements


def test_roundtrip_detects_unlawful_seminorm(padic2):
    # break semi-multiplicativity: the evaluator inflates 2T - 2 while
    # its values on T - 1 (hence the membership view) stay lawful
    sp = Space(padic2, F(1))

    class Broken(FilterSeminorm):
        def lin_value(self, f):
            from ultraball.exactnum import Exact

            if self.space.field.eq(f.a, F(2)):
                return Exact(F(2))
            return super().lin_value(f)

    x = Broken(sp.disc_point(F(1), F(1, 4)))
    good = verify_roundtrip_seminorm(x, [(LinPoly(F(1), F(1)), F(1, 2))], 16)
    assert good.ok
    # induced value is |2| * value(T - 1) = 1/8ish, direct claims 2
    bad = verify_roundtrip_seminorm(x, [(LinPoly(F(2), F(2)), F(1, 2))], 16)
    assert not bad.ok


# -- max modulus ---------------------------------------------------------------


def test_max_modulus_examples(padic2):
    sp = Space(padic2, F(1))
    ball = FormalBall(F(0), F(1))
    rep = max_modulus_oracle(sp, ball, make_poly(padic2, (F(0), F(1))), 16)
    assert rep.all_within_bound and rep.witness is not None
    assert rep.bound == F(1)
    const = make_poly(padic2, (F(6),))
    rep = max_modulus_oracle(sp, ball, const, 8)
    assert rep.witness is not None and rep.max_seen == rep.bound == F(1, 2)
    f = make_poly(padic2, (F(-1), F(0), F(1)))  # T^2 - 1 on B(1/2; 0)
    rep = max_modulus_oracle(sp, FormalBall(F(0), F(1, 2)), f, 16)
    assert rep.all_within_bound
    assert rep.witness == F(0)  # |f(0)|_2 = 1 attains the bound


def test_max_modulus_witness_with_separated_roots(padic2):
    # roots kept off the sphere |z - k| = q guarantee a unit witness
    rng = random.Random(31337)
    sp = Space(padic2, F(1))
    found = 0
    while found < 40:
        k = random_in_K_R(padic2, rng, F(1))
        q = F(1, 2 ** rng.randint(0, 3))
        lead = random_element(padic2, rng)
        if padic2.is_zero(lead):
            continue
        roots = [random_element(padic2, rng) for _ in range(rng.randint(1, 4))]
        if any(padic2.norm(k - b) == q for b in roots):
            continue
        f = poly_from_roots(padic2, lead, roots)
        rep = max_modulus_oracle(sp, FormalBall(k, q), f, 24, seed=found)
        assert rep.all_within_bound
        assert rep.witness is not None, (k, q, f)
        found += 1
