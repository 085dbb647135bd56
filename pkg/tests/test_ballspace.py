import random
from fractions import Fraction as F

import pytest

from ultraball.ballspace import (
    FormalBall,
    Space,
    ball_equal,
    ball_included,
    check_R_good,
    filter_member,
    filter_radius,
)
from ultraball.errors import SemanticError
from ultraball.exactnum import to_exact, upper_lt

from conftest import all_fields, random_in_K_R


def halving_chain(space, center, start=F(1)):
    """Nested same-center chain with radii start, start/2, start/4, ..."""
    return space.chain(lambda i: FormalBall(center, start / 2**i))


# -- inclusion and equality ---------------------------------------------------


def test_inclusion_same_center(padic2):
    assert ball_included(padic2, FormalBall(F(0), F(1, 2)), FormalBall(F(0), F(1)))
    assert not ball_included(padic2, FormalBall(F(0), F(1)), FormalBall(F(0), F(1, 2)))


def test_inclusion_strictness(padic2):
    # |2 - 0|_2 = 1/2 is not strictly below the radius 1/2
    assert not ball_included(padic2, FormalBall(F(2), F(1, 4)), FormalBall(F(0), F(1, 2)))
    assert ball_included(padic2, FormalBall(F(2), F(1, 4)), FormalBall(F(0), F(3, 4)))


def test_inclusion_trivial_field(trivial):
    # |5 - 7| = 1 < 2 and 1 <= 2
    assert ball_included(trivial, FormalBall(F(5), F(1)), FormalBall(F(7), F(2)))


def test_ball_equal_examples(padic2):
    assert not ball_equal(padic2, FormalBall(F(0), F(1)), FormalBall(F(1), F(1)))
    assert ball_equal(padic2, FormalBall(F(0), F(1)), FormalBall(F(2), F(1)))
    assert ball_equal(padic2, FormalBall(F(3), F(1, 8)), FormalBall(F(3), F(1, 8)))


@pytest.mark.parametrize("field", all_fields(), ids=lambda f: f.spec_string())
def test_inclusion_preorder(field):
    rng = random.Random(5)
    R = F(2)
    radii = [F(1, 4), F(1, 2), F(1), F(3, 2), F(2)]
    balls = [
        FormalBall(random_in_K_R(field, rng, R), rng.choice(radii))
        for _ in range(40)
    ]
    for b in balls:
        assert ball_included(field, b, b)
    for _ in range(300):
        a, b, c = rng.choice(balls), rng.choice(balls), rng.choice(balls)
        if ball_included(field, a, b) and ball_included(field, b, c):
            assert ball_included(field, a, c)


@pytest.mark.parametrize("field", all_fields(), ids=lambda f: f.spec_string())
def test_equal_balls_share_radius(field):
    rng = random.Random(6)
    R = F(2)
    balls = [
        FormalBall(random_in_K_R(field, rng, R), F(rng.randint(1, 8), 4))
        for _ in range(40)
    ]
    for a in balls:
        for b in balls:
            if ball_equal(field, a, b):
                assert a.radius == b.radius


def test_trivially_valued_collapse(trivial):
    # with q <= 1 over a trivially valued field, equal balls share centers
    rng = random.Random(9)
    centers = [F(n) for n in range(-3, 4)]
    for q in (F(1, 2), F(1)):
        for a in centers:
            for b in centers:
                eq = ball_equal(trivial, FormalBall(a, q), FormalBall(b, q))
                assert eq == (a == b)


# -- construction constraints -------------------------------------------------


def test_space_rejects_center_outside_K_R(trivial):
    space = Space(trivial, F(1, 2))
    with pytest.raises(SemanticError, match="center not in K_R"):
        space.ball(F(7), F(1, 4))
    with pytest.raises(SemanticError, match="center not in K_R"):
        space.disc_point(F(7), F(1, 4))


def test_space_rejects_bad_radii(padic2):
    space = Space(padic2, F(1))
    with pytest.raises(SemanticError):
        space.ball(F(0), F(0))
    with pytest.raises(SemanticError):
        space.disc_point(F(0), F(-1))
    with pytest.raises(SemanticError, match="exceeds R"):
        space.disc_point(F(0), F(2))


# -- membership ---------------------------------------------------------------


def test_disc_point_membership(padic2):
    space = Space(padic2, F(1))
    filt = space.disc_point(F(0), F(1, 2))
    assert filter_member(filt, FormalBall(F(0), F(3, 4)), 0)
    # strictness at the limit radius: a definite no, not merely unknown
    assert not filter_member(filt, FormalBall(F(0), F(1, 2)), 100)


def test_chain_membership_large_radius(padic2):
    space = Space(padic2, F(1))
    filt = halving_chain(space, F(0))
    for k in (F(0), F(1), F(1, 3)):
        assert filter_member(filt, FormalBall(k, F(3, 2)), 0)


def test_chain_membership_via_generators(padic2):
    space = Space(padic2, F(1))
    filt = halving_chain(space, F(0))
    ball = FormalBall(F(0), F(1, 4))
    assert not filter_member(filt, ball, 1)  # needs the radius-1/8 generator
    assert filter_member(filt, ball, 3)


def test_disc_point_membership_upward_closed(padic2):
    rng = random.Random(12)
    space = Space(padic2, F(1))
    filt = space.disc_point(F(2), F(1, 4))
    radii = [F(n, 8) for n in range(1, 17)]
    balls = [
        FormalBall(random_in_K_R(padic2, rng, F(1)), rng.choice(radii))
        for _ in range(60)
    ]
    for b1 in balls:
        for b2 in balls:
            if filter_member(filt, b1, 0) and ball_included(padic2, b1, b2):
                assert filter_member(filt, b2, 0)


# -- radius -------------------------------------------------------------------


def test_filter_radius_disc_point(padic2):
    space = Space(padic2, F(1))
    assert to_exact(filter_radius(space.disc_point(F(0), F(1, 3)))) == F(1, 3)
    assert to_exact(filter_radius(space.disc_point(F(0), F(0)))) == F(0)


def test_filter_radius_chain(padic2):
    space = Space(padic2, F(1))
    rad = filter_radius(halving_chain(space, F(0)))
    assert rad.bound_at(0) == F(1)
    assert rad.bound_at(10) == F(1, 1024)
    assert to_exact(rad, 10) is None  # genuinely decreasing, no certificate


def test_filter_radius_below_R_immediately(padic2, trivial):
    # every rational above R is in the radius cut already at depth 0
    for field, R in ((padic2, F(1)), (trivial, F(2))):
        space = Space(field, R)
        filt = space.chain(lambda i: FormalBall(F(0), R + 2 / F(i + 1)))
        rad = filter_radius(filt)
        for q in (R + F(1, 100), R + F(1), R * 2):
            assert upper_lt(rad, q, 0)


# -- law verifier -------------------------------------------------------------


def test_check_R_good_disc_points(padic2, trivial, tadic):
    for field, R, center in (
        (padic2, F(1), F(2)),
        (trivial, F(2), F(5)),
        (tadic, F(1), None),
    ):
        space = Space(field, R)
        c = center if center is not None else field.t
        report = check_R_good(space.disc_point(c, F(1, 4)), depth=8, samples=4)
        assert report.ok, report.failures()


def test_check_R_good_lawful_chain(padic2):
    space = Space(padic2, F(1))
    report = check_R_good(halving_chain(space, F(0)), depth=16, samples=4)
    assert report.ok, report.failures()


def test_check_R_good_flags_constant_radius(padic2):
    space = Space(padic2, F(1))
    filt = space.chain(lambda i: FormalBall(F(0), F(1)))
    report = check_R_good(filt, depth=8, samples=4)
    assert not report.ok
    failed = {c.clause for c in report.failures()}
    assert failed == {"strictly-smaller-radius"}
    detail = next(c.detail for c in report.failures())
    assert "B(1; 0)" in detail  # counterexample ball is named


def test_check_R_good_flags_non_descending(padic2):
    space = Space(padic2, F(1))
    balls = [FormalBall(F(0), F(1)), FormalBall(F(0), F(1, 4)),
             FormalBall(F(0), F(1, 2))]
    report = check_R_good(space.chain(balls), depth=8, samples=2)
    assert not report.ok
    assert any(c.clause == "descending" for c in report.failures())


def test_check_R_good_flags_incomparable(padic2):
    space = Space(padic2, F(1))
    balls = [FormalBall(F(0), F(1, 4)), FormalBall(F(1), F(1, 4))]
    report = check_R_good(space.chain(balls), depth=8, samples=2)
    assert not report.ok
    assert any(c.clause == "total-order" for c in report.failures())


def test_check_R_good_flags_invalid_generator(padic2):
    space = Space(padic2, F(1))
    # norm(1/2) = 2 > R, injected behind the validating constructor
    filt = space.chain(lambda i: FormalBall(F(1, 2), F(1, 2 ** i)))
    report = check_R_good(filt, depth=8, samples=2)
    assert not report.ok
    assert any(c.clause == "generators-valid" for c in report.failures())


def test_check_R_good_rejects_bad_arguments(padic2):
    space = Space(padic2, F(1))
    with pytest.raises(ValueError):
        check_R_good(space.disc_point(F(0), F(1, 2)), depth=0, samples=1)
