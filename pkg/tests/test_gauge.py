import numpy as np
import pytest
from hypothesis import given

from bihyp.checks import Verdict, _subset_sums, default_probes, check_absorbing, check_balanced, check_h2_convex
from bihyp.core import E, ONE, Bihyperbolic, Relation, compare, modulus
from bihyp.errors import OriginNotInterior, UnsupportedSet
from bihyp.gauge import (
    Method,
    check_gauge_definite,
    check_sandwich,
    gauge_bisection,
    h2_gauge,
    origin_interior,
    real_gauge,
    recheck,
    unit_sets,
)
from bihyp.linear import HVector, project
from bihyp.sets import LambdaPredicate, NormBall, PolytopeHull, Product

from strategies import hvectors, null_cone_scalars, small_bihyp

SQUARE = PolytopeHull([[1, 1], [1, -1], [-1, -1], [-1, 1]])
UNIT_BALL = Product([NormBall("p2", 1.0)] * 4, dim=2)
OPEN_BALL = Product([NormBall("p2", 1.0, False)] * 4, dim=2)
MIXED = Product([NormBall(), NormBall("p1", 2.0), SQUARE, NormBall("pinf", 0.5, False)], dim=2)


def test_real_gauge_examples():
    assert real_gauge(SQUARE, [2.0, 1.0]) == pytest.approx(2.0, abs=1e-12)
    assert real_gauge(NormBall("p2", 2.0), [0.6, 0.8]) == 0.5
    assert real_gauge(SQUARE, [0.0, 0.0]) == 0.0
    assert real_gauge(NormBall("p1", 3.0), np.zeros(4)) == 0.0


def test_bisection_examples():
    assert gauge_bisection(SQUARE, [2.0, 1.0], 1e-9) == pytest.approx(2.0, abs=1e-9)
    assert gauge_bisection(NormBall("p2", 1.0), [0.6, 0.8], 1e-9) == pytest.approx(1.0, abs=1e-9)
    assert gauge_bisection(SQUARE, [0.0, 0.0]) == 0.0


def test_origin_not_interior():
    tri = PolytopeHull([[1, 0], [2, 0], [1, 1]])
    with pytest.raises(OriginNotInterior):
        real_gauge(tri, [1.0, 0.0])
    with pytest.raises(OriginNotInterior):
        gauge_bisection(tri, [1.0, 0.0])
    # origin on the boundary is not interior either
    edge = PolytopeHull([[0, -1], [0, 1], [1, 0]])
    assert not origin_interior(edge.vertices)
    S = Product([NormBall(), tri, NormBall(), NormBall()], dim=2)
    with pytest.raises(OriginNotInterior) as err:
        h2_gauge(S, HVector.zeros(2))
    assert err.value.component == 2


def test_h2_gauge_needs_product():
    with pytest.raises(UnsupportedSet):
        h2_gauge(LambdaPredicate("abs_sum_lt"), HVector.zeros(1))


def test_h2_gauge_examples():
    x = HVector([[3, 4], [0, 1], [1, 1], [0, 0]])
    r = h2_gauge(UNIT_BALL, x)
    assert r.value == Bihyperbolic(5, 1, np.sqrt(2), 0)
    assert r.method is Method.CLOSED_FORM
    assert r.per_component == tuple(r.value.lam)
    assert h2_gauge(UNIT_BALL, HVector.zeros(2)).value == Bihyperbolic(0.0)
    assert h2_gauge(MIXED, x).method is Method.LP
    for i in range(4):
        assert h2_gauge(MIXED, E[i] * x).value.isclose(E[i] * h2_gauge(MIXED, x).value, 1e-12)


def test_gauge_json():
    r = h2_gauge(UNIT_BALL, HVector([[3, 4], [0, 0], [0, 0], [0, 0]]))
    assert r.to_json() == {"value": [5.0, 0.0, 0.0, 0.0], "per_component": [5.0, 0.0, 0.0, 0.0], "method": "ClosedForm"}


def _random_hull(rng, dim):
    k = int(rng.integers(dim + 1, 13))
    V = rng.standard_normal((k, dim)) * rng.uniform(0.5, 2.0)
    # push the vertex set to surround the origin
    V -= V.mean(axis=0)
    return PolytopeHull(V)


@pytest.mark.parametrize("dim", [2, 3])
def test_lp_matches_bisection(rng, dim):
    checked = 0
    while checked < 40:
        C = _random_hull(rng, dim)
        if not origin_interior(C.vertices):
            continue
        x = rng.standard_normal(dim) * 2
        assert abs(real_gauge(C, x) - gauge_bisection(C, x, 1e-9)) <= 1e-6
        checked += 1


@pytest.mark.parametrize("p", ["p1", "pinf"])
def test_ball_closed_form_matches_lp_polytope(rng, p):
    # the p1 and pinf unit balls are polytopes, so the LP gives a second route
    d = 3
    if p == "p1":
        V = np.vstack([np.eye(d), -np.eye(d)])
    else:
        V = np.array(np.meshgrid(*[[-1.0, 1.0]] * d)).reshape(d, -1).T
    ball, hull = NormBall(p, 1.0), PolytopeHull(V)
    for _ in range(50):
        x = rng.standard_normal(d)
        assert abs(real_gauge(ball, x) - real_gauge(hull, x)) <= 1e-12


# -- seminorm laws of the gauge -------------------------------------------------------


@given(x=hvectors(2), y=hvectors(2))
def test_gauge_subadditive(x, y):
    for S in (UNIT_BALL, MIXED):
        q = lambda v: h2_gauge(S, v).value
        assert compare(q(x + y), q(x) + q(y), 1e-9) in (Relation.LESS, Relation.EQUAL)


@given(x=hvectors(2), lam=small_bihyp)
def test_gauge_homogeneous(x, lam):
    q = lambda v: h2_gauge(MIXED, v).value
    assert q(lam * x).isclose(modulus(lam) * q(x), 1e-9)


@pytest.mark.parametrize("lam", _subset_sums())
def test_gauge_null_cone_branches(lam, rng):
    for _ in range(20):
        x = HVector(rng.standard_normal((4, 2)))
        assert h2_gauge(MIXED, lam * x).value.isclose(lam * h2_gauge(MIXED, x).value, 1e-9)


@given(x=hvectors(2), lam=null_cone_scalars())
def test_gauge_homogeneous_null_cone(x, lam):
    q = lambda v: h2_gauge(MIXED, v).value
    assert q(lam * x).isclose(modulus(lam) * q(x), 1e-9)


def test_gauge_eliminates_components():
    x = HVector([[1, 2], [0, 0], [0, 0], [0, 0]])
    v = h2_gauge(MIXED, x).value
    assert v.lam[1:] == (0.0, 0.0, 0.0) and v.lam[0] > 0


# -- unit sets, sandwich, corollary ---------------------------------------------------


def test_unit_sets_nested(rng):
    A, C = unit_sets(MIXED, True), unit_sets(MIXED, False)
    for _ in range(200):
        x = HVector(rng.uniform(-2, 2, (4, 2)))
        if A.contains(x):
            assert C.contains(x)


def test_unit_sets_agree_with_balls(rng):
    A, C = unit_sets(OPEN_BALL, True), unit_sets(UNIT_BALL, False)
    for _ in range(300):
        x = HVector(rng.uniform(-1.2, 1.2, (4, 2)))
        assert C.contains(x) == UNIT_BALL.contains(x)
        assert A.contains(x) == OPEN_BALL.contains(x)


def test_unit_sets_are_convex_balanced_absorbing():
    for strict in (True, False):
        U = unit_sets(MIXED, strict)
        assert check_h2_convex(U, 300).passed
        assert check_balanced(U, 300).passed
        assert check_absorbing(U, default_probes(2, 16)).passed


@pytest.mark.parametrize("S", [UNIT_BALL, OPEN_BALL, MIXED])
def test_sandwich(S):
    rep = check_sandwich(S, trials=400, seed=3)
    assert rep.verdict is Verdict.SAMPLED


def test_sandwich_catches_wrong_set():
    class Shrunk(Product):
        # claims membership only well inside the ball, so S = C_B breaks
        def contains(self, x, tol=1e-9):
            return super().contains(x, tol) and bool(np.all(np.abs(x.comps) < 0.5))

    S = Shrunk([NormBall()] * 4, dim=2)
    rep = check_sandwich(S, trials=400)
    assert rep.verdict is Verdict.FAIL
    assert recheck(S, rep.to_dict()["witness"])


@pytest.mark.parametrize("S", [UNIT_BALL, MIXED])
def test_gauge_definite(S):
    assert check_gauge_definite(S, trials=500).passed
