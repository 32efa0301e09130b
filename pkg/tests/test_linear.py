import numpy as np
import pytest
from hypothesis import given

from bihyp.core import E, J1, ONE, Bihyperbolic, Relation, compare, modulus, preceq
from bihyp.errors import BadIndex, DimensionMismatch, InvalidInput
from bihyp.linear import (
    CanonicalNorm,
    ComponentNorm,
    HVector,
    canonical_norm_eval,
    project,
    vec_add,
    vec_scale,
)

from strategies import hvectors, null_cone_scalars, small_bihyp

EUCLID = CanonicalNorm(("p2",) * 4)


def test_scale_examples():
    x = HVector(np.arange(8.0).reshape(4, 2))
    assert vec_scale(1, x) == x
    y = vec_scale(E[0], x)
    assert np.all(y.comps[1:] == 0) and np.all(y.comps[0] == x.comps[0])
    assert vec_add(x, -x).is_zero()


def test_scalar_action_is_row_scaling():
    x = HVector(np.ones((4, 3)))
    lam = Bihyperbolic(1, 2, 3, 4)
    assert np.array_equal((lam * x).comps, np.array([[1.0] * 3, [2.0] * 3, [3.0] * 3, [4.0] * 3]))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        vec_add(HVector.zeros(2), HVector.zeros(3))
    with pytest.raises(DimensionMismatch):
        HVector.zeros(2) - HVector.zeros(1)


def test_bad_shapes():
    with pytest.raises(InvalidInput):
        HVector(np.zeros((3, 2)))
    with pytest.raises(InvalidInput):
        HVector([[np.nan], [0], [0], [0]])


@given(hvectors(3))
def test_project_examples(x):
    total = HVector.zeros(3)
    for i in range(1, 5):
        total = total + project(x, i)
    assert total == x
    assert project(project(x, 1), 2).is_zero()
    assert project(HVector.zeros(3), 4).is_zero()
    assert project(x, 2) == E[1] * x


def test_project_bad_index():
    with pytest.raises(BadIndex):
        project(HVector.zeros(1), 0)


def test_entries_round_trip():
    ents = [Bihyperbolic(1, 2, 3, 4), J1]
    x = HVector.from_entries(ents)
    assert x.dim == 2
    assert x.entries() == ents
    assert HVector.from_json(x.to_json()) == x
    assert HVector.from_json([{"idempotent": [1, 2, 3, 4]}, "j1"]) == x


def test_canonical_norm_examples():
    x = HVector([[3.0, 4.0], [0, 0], [0, 0], [0, 0]])
    assert EUCLID(x) == Bihyperbolic(5, 0, 0, 0)
    assert canonical_norm_eval(EUCLID, HVector.zeros(2)) == Bihyperbolic(0.0)
    y = HVector([[1.0, -2.0], [3.0, 0.5], [0, 1], [2, 2]])
    assert EUCLID((2 * J1) * y).isclose(2 * EUCLID(y), 1e-15)


def test_component_norm_parse():
    assert ComponentNorm.parse(1) is ComponentNorm.P1
    assert ComponentNorm.parse("inf") is ComponentNorm.PINF
    assert ComponentNorm.parse("p2") is ComponentNorm.P2
    with pytest.raises(InvalidInput):
        ComponentNorm.parse("p3")


@pytest.mark.parametrize("p", ["p1", "p2", "pinf"])
def test_component_norm_matches_numpy(p):
    v = np.array([3.0, -4.0, 1.0])
    n = ComponentNorm(p)
    assert n(v) == pytest.approx(np.linalg.norm(v, n.ord), abs=1e-15)


NORMS = [EUCLID, CanonicalNorm(("p1", "p2", "pinf", "p1"))]


@pytest.mark.parametrize("N", NORMS)
@given(x=hvectors(2), y=hvectors(2), lam=small_bihyp)
def test_norm_axioms(N, x, y, lam):
    nx = N(x)
    assert all(v >= 0 for v in nx.lam)
    assert nx.is_zero() == x.is_zero()
    assert N(lam * x).isclose(modulus(lam) * nx, 1e-12)
    assert compare(N(x + y), nx + N(y), 1e-12) in (Relation.LESS, Relation.EQUAL)


@given(x=hvectors(2), lam=null_cone_scalars())
def test_norm_homogeneity_null_cone(x, lam):
    assert EUCLID(lam * x).isclose(modulus(lam) * EUCLID(x), 1e-12)


@given(hvectors(2))
def test_norm_decomposes(x):
    parts = [EUCLID(project(x, i)) for i in range(1, 5)]
    total = parts[0] + parts[1] + parts[2] + parts[3]
    assert total.isclose(EUCLID(x), 1e-15)


def test_norm_json():
    N = CanonicalNorm(("p1", "p2", "pinf", "p2"))
    assert N.to_json() == {"canonical_norm": {"norms": ["p1", "p2", "pinf", "p2"]}}
    assert preceq(EUCLID(HVector.scalar(ONE)), ONE)
