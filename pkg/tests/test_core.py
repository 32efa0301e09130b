import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bihyp.core import (
    E,
    J1,
    J2,
    J3,
    ONE,
    ZERO,
    Bihyperbolic,
    CanonicalCoords,
    Relation,
    compare,
    dual_json,
    format_canonical,
    from_canonical,
    from_json,
    idempotent,
    inf_h2,
    inverse,
    is_in_null_cone,
    is_nonnegative,
    is_zero_divisor,
    modulus,
    mul,
    parse_canonical,
    preceq,
    sup_h2,
    to_canonical,
    to_json,
)
from bihyp.errors import BadIndex, EmptySet, InvalidInput, NotInvertible

from conftest import jtable_mul
from strategies import bihyp, null_cone_scalars, reals, small_bihyp

E1, E2, E3, E4 = E


# -- coordinate maps --------------------------------------------------------------------


@pytest.mark.parametrize(
    "canon, lam",
    [
        ((1, 0, 0, 0), (1, 1, 1, 1)),
        ((0, 1, 0, 0), (1, -1, 1, -1)),
        ((0.25, 0.25, 0.25, 0.25), (1, 0, 0, 0)),
    ],
)
def test_from_canonical_examples(canon, lam):
    assert from_canonical(CanonicalCoords(*canon)).lam == tuple(float(v) for v in lam)


@pytest.mark.parametrize(
    "lam, canon",
    [
        ((1, 1, 1, 1), (1, 0, 0, 0)),
        ((1, 0, 0, 0), (0.25, 0.25, 0.25, 0.25)),
        ((1, -1, 1, -1), (0, 1, 0, 0)),
    ],
)
def test_to_canonical_examples(lam, canon):
    assert to_canonical(Bihyperbolic(*lam)).as_tuple() == tuple(float(v) for v in canon)


def test_non_finite_rejected():
    with pytest.raises(InvalidInput):
        CanonicalCoords(math.nan, 0, 0, 0)
    with pytest.raises(InvalidInput):
        Bihyperbolic(1, 2, math.inf, 0)
    with pytest.raises(InvalidInput):
        Bihyperbolic(1, 2, 3)


@given(st.tuples(reals, reals, reals, reals))
def test_round_trip(c):
    back = to_canonical(from_canonical(CanonicalCoords(*c))).as_tuple()
    assert np.allclose(back, c, rtol=0, atol=1e-14 * max(1.0, max(abs(v) for v in c)))


def test_idempotents_sum_to_one_and_annihilate():
    assert E1 + E2 + E3 + E4 == ONE
    for i in range(4):
        for j in range(4):
            assert E[i] * E[j] == (E[i] if i == j else ZERO)
    assert idempotent(1) == E1
    with pytest.raises(BadIndex):
        idempotent(5)


def test_e1_canonical_form():
    assert to_canonical(E1).as_tuple() == (0.25, 0.25, 0.25, 0.25)


# -- ring operations ------------------------------------------------------------------


def test_mul_examples():
    assert mul(J1, J2) == J3
    assert J1 * J2 == Bihyperbolic(1, -1, -1, 1)
    assert mul(E1, E2) == ZERO
    assert mul(Bihyperbolic(2, 3, 4, 5), ONE) == Bihyperbolic(2, 3, 4, 5)


def test_j_squares():
    for j in (J1, J2, J3):
        assert j * j == ONE


@given(bihyp, bihyp)
def test_mul_matches_jtable(a, b):
    want = jtable_mul(to_canonical(a).as_tuple(), to_canonical(b).as_tuple())
    got = to_canonical(a * b).as_tuple()
    scale = max(1.0, max(abs(v) for v in a.lam) * max(abs(v) for v in b.lam))
    assert np.allclose(got, want, rtol=0, atol=1e-12 * scale)


@given(small_bihyp, small_bihyp, small_bihyp)
def test_ring_axioms(a, b, c):
    assert a * b == b * a
    assert ((a * b) * c).isclose(a * (b * c), 1e-12)
    assert (a * (b + c)).isclose(a * b + a * c, 1e-12)
    assert a + (-a) == ZERO
    assert a - b == a + (-b)


def test_real_scalars_mix():
    a = Bihyperbolic(1, 2, 3, 4)
    assert 2 * a == a * 2 == Bihyperbolic(2, 4, 6, 8)
    assert a + 1 == Bihyperbolic(2, 3, 4, 5)
    assert 1 - a == Bihyperbolic(0, -1, -2, -3)
    assert Bihyperbolic(3.0) == Bihyperbolic(3, 3, 3, 3)


def test_immutable():
    a = Bihyperbolic(1, 2, 3, 4)
    with pytest.raises(AttributeError):
        a.lam = (0, 0, 0, 0)


# -- inverse / null cone --------------------------------------------------------------


def test_inverse_examples():
    assert inverse(Bihyperbolic(2.0)) == Bihyperbolic(0.5)
    assert inverse(J1) == J1
    with pytest.raises(NotInvertible):
        inverse(E1)
    with pytest.raises(NotInvertible):
        ONE / E2


@given(small_bihyp)
def test_inverse_law(b):
    if is_in_null_cone(b):
        with pytest.raises(NotInvertible):
            inverse(b)
    else:
        assert (b * inverse(b)).isclose(ONE, 1e-12)


@pytest.mark.parametrize(
    "b, nc, zd",
    [(E1, True, True), (ZERO, True, False), (Bihyperbolic(1, 2, 3, 4), False, False)],
)
def test_null_cone_examples(b, nc, zd):
    assert is_in_null_cone(b) is nc
    assert is_zero_divisor(b) is zd


def _canonical_null_systems(x, y, z, w, tol=1e-9):
    # the four linear systems on canonical coefficients, one per vanishing lambda
    return any(
        abs(v) <= tol
        for v in (x + y + z + w, x - y + z - w, x + y - z - w, x - y - z + w)
    )


@given(null_cone_scalars())
def test_zero_divisor_witness(b):
    assert is_in_null_cone(b)
    assert _canonical_null_systems(*to_canonical(b).as_tuple())
    if is_zero_divisor(b):
        k = next(i for i, v in enumerate(b.lam) if abs(v) <= 1e-12)
        assert E[k] != ZERO and (b * E[k]).is_zero(1e-12)


# -- modulus / order ------------------------------------------------------------------


def test_modulus_examples():
    assert modulus(ZERO) == ZERO
    assert modulus(J1) == ONE
    assert modulus(Bihyperbolic(-2, 3, 0, -1)) == Bihyperbolic(2, 3, 0, 1)
    assert abs(Bihyperbolic(-1, 1, -1, 1)) == ONE


@given(bihyp, bihyp)
def test_modulus_laws(a, b):
    assert modulus(a * b) == modulus(a) * modulus(b)
    assert compare(modulus(a + b), modulus(a) + modulus(b)) in (Relation.LESS, Relation.EQUAL)
    assert modulus(a).is_zero() == a.is_zero()


def test_compare_examples():
    c = compare(E1, ONE)
    assert c == Relation.LESS and not c.strict
    assert compare(E1, E2) == Relation.INCOMPARABLE
    x = Bihyperbolic(1, -2, 3, 0)
    assert compare(x, x) == Relation.EQUAL
    assert compare(ZERO, ONE).strict
    assert compare(ONE, ZERO) == Relation.GREATER


@given(small_bihyp, small_bihyp, small_bihyp)
def test_order_monotone(a, b, c):
    if preceq(a, b):
        xi = modulus(c)
        assert preceq(a * xi, b * xi)
        assert preceq(-b, -a)
        assert preceq(a + c, b + c)


def test_nonnegative():
    assert is_nonnegative(E3)
    assert not is_nonnegative(J1)


def test_sup_inf_examples():
    assert sup_h2([E1, E2]) == Bihyperbolic(1, 1, 0, 0)
    x = Bihyperbolic(1, -2, 3, 0)
    assert sup_h2([x]) == x
    assert inf_h2([E1, E2]) == ZERO
    with pytest.raises(EmptySet):
        sup_h2([])
    with pytest.raises(EmptySet):
        inf_h2([])


@given(st.lists(small_bihyp, min_size=1, max_size=6))
def test_sup_is_least_upper_bound(items):
    s, i = sup_h2(items), inf_h2(items)
    assert all(preceq(b, s) and preceq(i, b) for b in items)
    # any componentwise upper bound dominates the sup
    ub = Bihyperbolic(*(max(col) + 1.0 for col in zip(*(b.lam for b in items))))
    assert preceq(s, ub)


# -- text and JSON --------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, want",
    [
        ("j1", J1),
        ("1 + 0 j1 + 0 j2 + 0 j3", ONE),
        ("0.25 + 0.25 j1 + 0.25 j2 + 0.25 j3", E1),
        ("-j3", -J3),
        ("2 - 1.5 j2", Bihyperbolic.from_canonical(2, 0, -1.5, 0)),
        ("e4", E4),
    ],
)
def test_parse_canonical(text, want):
    assert parse_canonical(text) == want


@pytest.mark.parametrize("bad", ["", "j4", "1 2", "x + y"])
def test_parse_rejects(bad):
    with pytest.raises(InvalidInput):
        parse_canonical(bad)


@given(small_bihyp)
def test_text_and_json_round_trip(b):
    assert parse_canonical(format_canonical(b)).isclose(b, 1e-12)
    assert from_json(to_json(b)) == b
    d = dual_json(b)
    assert from_json({"canonical": d["canonical"]}).isclose(b, 1e-12)


def test_from_json_forms():
    assert from_json(2) == Bihyperbolic(2.0)
    assert from_json({"idempotent": [1, 0, 0, 0]}) == E1
    with pytest.raises(InvalidInput):
        from_json(True)
    with pytest.raises(InvalidInput):
        from_json({"other": 1})
