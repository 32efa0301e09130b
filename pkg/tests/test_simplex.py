import numpy as np
import pytest
from scipy.optimize import linprog

from bihyp.errors import LPInfeasible, NumericalStall
from bihyp.simplex import feasibility_residual, linprog_eq


def test_simple_lp():
    # min x + y  s.t. x + 2y = 4, x, y >= 0  -> y = 2
    res = linprog_eq(np.array([1.0, 1.0]), np.array([[1.0, 2.0]]), np.array([4.0]))
    assert res.fun == pytest.approx(2.0)
    assert np.allclose(res.x, [0.0, 2.0])


def test_negative_rhs_rows_are_flipped():
    res = linprog_eq(np.array([1.0, 1.0]), np.array([[-1.0, -2.0]]), np.array([-4.0]))
    assert res.fun == pytest.approx(2.0)


def test_infeasible():
    with pytest.raises(LPInfeasible):
        linprog_eq(np.ones(2), np.array([[1.0, 1.0]]), np.array([-1.0]))
    assert feasibility_residual(np.array([[1.0, 1.0]]), np.array([-1.0])) > 0.5


def test_redundant_rows():
    A = np.array([[1.0, 1.0, 0.0], [2.0, 2.0, 0.0], [0.0, 1.0, 1.0]])
    b = np.array([1.0, 2.0, 1.0])
    res = linprog_eq(np.array([1.0, 2.0, 1.0]), A, b)
    ref = linprog(np.array([1.0, 2.0, 1.0]), A_eq=A, b_eq=b, method="highs")
    assert res.fun == pytest.approx(ref.fun, abs=1e-9)


def test_iteration_cap():
    A = np.array([[1.0, 1.0, 1.0]])
    with pytest.raises(NumericalStall):
        linprog_eq(np.array([-1.0, 0.0, 1.0]), A, np.array([1.0]), max_iter=0)


def test_degenerate_cycling_example():
    # a classic cycling instance for naive pivoting, written in equality form
    c = np.array([-0.75, 150.0, -0.02, 6.0, 0, 0, 0])
    A = np.array(
        [
            [0.25, -60.0, -0.04, 9.0, 1, 0, 0],
            [0.5, -90.0, -0.02, 3.0, 0, 1, 0],
            [0.0, 0.0, 1.0, 0.0, 0, 0, 1],
        ]
    )
    b = np.array([0.0, 0.0, 1.0])
    res = linprog_eq(c, A, b)
    ref = linprog(c, A_eq=A, b_eq=b, method="highs")
    assert res.fun == pytest.approx(ref.fun, abs=1e-9)


@pytest.mark.parametrize("seed", range(40))
def test_random_gauge_lps_match_highs(seed):
    rng = np.random.default_rng(seed)
    n, k = rng.integers(2, 4), rng.integers(4, 12)
    V = rng.standard_normal((k, n))
    V = np.vstack([V, -V])  # symmetric, so 0 is interior almost surely
    x = rng.standard_normal(n) * 3
    res = linprog_eq(np.ones(len(V)), V.T, x)
    ref = linprog(np.ones(len(V)), A_eq=V.T, b_eq=x, method="highs")
    assert res.fun == pytest.approx(ref.fun, abs=1e-8)
    assert np.all(res.x >= -1e-12)
    assert np.allclose(V.T @ res.x, x, atol=1e-9)


def test_phase_one_roundoff_does_not_report_unbounded():
    # pivot drift once left ~1e-11 reduced costs with an all-original basis
    V = np.array([
        [0.00034299515378917456, -0.7372647093168057, 1.4976409388094851],
        [-2.2316565232276466, 1.5405207922160808, -0.6352079411183902],
        [-2.2528872513066664, -0.6585273412917961, -0.1800592203246316],
        [2.0641916080925786, 1.4286407711650442, -0.31513631078017856],
        [-0.012711581355635083, 1.600883390699081, 0.7091342068741213],
        [2.3078900238736804, -0.5118841382609446, 0.3062359591783469],
        [-0.6240115188162512, 0.34994984933184903, -1.7060185950162094],
        [-0.024995906902301787, -1.3251258987901804, 0.22216838128871344],
        [1.496263632274579, 0.4619784373811725, 0.025246450282296162],
        [-0.21220373221213773, -1.2408533873752192, -0.8984880248619859],
        [-0.5102217455739874, -0.9083177657582817, 0.9744841556684328],
    ])
    for k in range(3):
        for s in (1.0, -1.0):
            d = np.zeros(3)
            d[k] = s
            assert feasibility_residual(V.T, d) <= 1e-12
