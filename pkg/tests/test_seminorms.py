import numpy as np
import pytest
from hypothesis import given

from bihyp.checks import Verdict
from bihyp.core import E, ONE, Bihyperbolic, modulus, preceq
from bihyp.errors import BadIndex, InvalidInput
from bihyp.gauge import h2_gauge
from bihyp.linear import CanonicalNorm, HVector
from bihyp.seminorms import (
    CoordinateSeminorm,
    GaugeSeminorm,
    SupFamily,
    check_seminorm_axioms,
    check_sup_monotone,
    evaluate,
    family_from_json,
    is_separated,
    kernel_check,
    recheck,
    seminorm_from_json,
    seminorm_to_json,
    sup_family,
)
from bihyp.sets import NormBall, PolytopeHull, Product

from strategies import hvectors

EUCLID = CanonicalNorm(("p2",) * 4)
FIRST = CoordinateSeminorm(frozenset({1}))
UNIT_BALL = Product([NormBall("p2", 1.0)] * 4, dim=2)
MIXED = Product([NormBall(), NormBall("p1", 2.0), PolytopeHull([[1, 1], [1, -1], [-1, -1], [-1, 1]]),
                 NormBall("pinf", 0.5, False)], dim=2)


def scalar(b):
    return HVector.scalar(b)


def test_eval_examples():
    e2 = scalar(E[1])
    assert not e2.is_zero() and evaluate(FIRST, e2) == Bihyperbolic(0.0)
    assert evaluate(EUCLID, scalar(ONE)) == ONE
    x = HVector([[0.3, -2], [1, 1], [0, 0.5], [4, 0]])
    assert evaluate(GaugeSeminorm(UNIT_BALL), x) == h2_gauge(UNIT_BALL, x).value


def test_coordinate_seminorm_values():
    x = HVector([[3.0, 4.0], [1, 1], [2, 2], [0, 1]])
    assert CoordinateSeminorm({1, 3})(x) == Bihyperbolic(5, 0, np.sqrt(8), 0)
    assert CoordinateSeminorm({2}, "p1")(x) == Bihyperbolic(0, 2, 0, 0)
    with pytest.raises(InvalidInput):
        CoordinateSeminorm({5})


@pytest.mark.parametrize(
    "p, dim",
    [(EUCLID, 2), (FIRST, 1), (CoordinateSeminorm({2, 4}, "pinf"), 3), (GaugeSeminorm(MIXED), None),
     (SupFamily([FIRST, CoordinateSeminorm({2, 3, 4}, "p1")]), 2)],
)
def test_axioms_pass(p, dim):
    assert check_seminorm_axioms(p, trials=300, dim=dim).verdict is Verdict.SAMPLED


def test_identity_map_is_not_a_seminorm():
    p = lambda x: x.entry(0)
    rep = check_seminorm_axioms(p, trials=50, dim=1)
    assert rep.verdict is Verdict.FAIL
    assert rep.witness["kind"] == "nonnegative"
    assert rep.witness["x"] == scalar(-ONE)
    assert recheck(p, rep.to_dict()["witness"])


def test_broken_subadditivity_is_caught():
    # squaring the norm keeps homogeneity for |lam| = 1 but breaks the triangle law
    p = lambda x: EUCLID(x) * EUCLID(x)
    rep = check_seminorm_axioms(p, trials=300, dim=2)
    assert rep.verdict is Verdict.FAIL
    assert recheck(p, rep.to_dict()["witness"])


def test_kernel_examples():
    rep = kernel_check(FIRST, trials=200)
    assert rep.passed and rep.details["kernel_components"] == [2, 3, 4]
    assert kernel_check(EUCLID, trials=50, dim=2).details["kernel_components"] == []


def test_kernel_scaling_by_j1():
    x = HVector([[0.0], [1.0], [-2.0], [3.0]])
    j1 = Bihyperbolic(1, -1, 1, -1)
    assert FIRST(j1 * x).is_zero()


def test_separation_examples():
    assert is_separated([EUCLID], trials=100).passed
    rep = is_separated([FIRST], trials=100)
    assert rep.verdict is Verdict.FAIL
    assert rep.witness["x"] == scalar(E[1])
    assert recheck([FIRST], rep.to_dict()["witness"])
    assert is_separated([FIRST, CoordinateSeminorm({2, 3, 4})], trials=200).passed


def test_sup_family_examples():
    F = [CoordinateSeminorm({1}), CoordinateSeminorm({2})]
    x = scalar(E[0] + 2 * E[1])
    assert sup_family(F, 1)(x) == F[0](x)
    assert sup_family(F, 2)(x) == Bihyperbolic(1, 2, 0, 0)
    with pytest.raises(BadIndex):
        sup_family(F, 3)
    with pytest.raises(BadIndex):
        sup_family(F, 0)


def test_sup_family_inherits_separation():
    F = [FIRST, CoordinateSeminorm({2, 3, 4}, "p1")]
    Q = [sup_family(F, m) for m in (1, 2)]
    assert is_separated(F, trials=100, dim=2).passed
    assert is_separated(Q, trials=100, dim=2).passed


def test_sup_monotone():
    F = [FIRST, EUCLID, CoordinateSeminorm({3}, "pinf")]
    assert check_sup_monotone(F, trials=200, dim=2).passed


@given(hvectors(2))
def test_sup_dominates_members(x):
    F = [FIRST, CoordinateSeminorm({2, 3}, "p1"), EUCLID]
    q = SupFamily(F)(x)
    assert all(preceq(p(x), q) for p in F)


def test_json_round_trip():
    for p in (EUCLID, FIRST, GaugeSeminorm(MIXED), SupFamily([FIRST, EUCLID])):
        d = seminorm_to_json(p)
        assert seminorm_to_json(seminorm_from_json(d)) == d
    assert isinstance(seminorm_from_json({"canonical_norm": {}}), CanonicalNorm)
    fam = family_from_json({"family": [{"coordinate": {"kept": [1]}}, {"canonical_norm": {"norms": "p1"}}]})
    assert len(fam) == 2
    with pytest.raises(InvalidInput):
        seminorm_from_json({"nope": {}})
    with pytest.raises(InvalidInput):
        family_from_json([])


def test_gauge_seminorm_needs_product():
    with pytest.raises(InvalidInput):
        GaugeSeminorm({"lambda_predicate": {"rule": "abs_sum_lt"}})
