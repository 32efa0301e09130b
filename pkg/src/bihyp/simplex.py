"""Dense two-phase tableau simplex for tiny equality-form LPs.

    minimize  c @ x   subject to  A @ x = b,  x >= 0

Bland's rule is used for both the entering and the leaving variable, so
the method cannot cycle.  Problems here have at most a few rows and a
dozen or so columns; clarity wins over speed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LPInfeasible, NumericalStall

PIVOT_TOL = 1e-11


@dataclass
class LPResult:
    x: np.ndarray
    fun: float
    iterations: int


def _pivot(T, basis, row, col):
    T[row] /= T[row, col]
    piv = T[row]
    for r in range(T.shape[0]):
        if r != row:
            f = T[r, col]
            if f != 0.0:
                T[r] -= f * piv
    basis[row] = col


def _reprice(T, basis, cost):
    """Recompute the z_j - c_j row from the basis so pivot roundoff cannot accumulate."""
    m = T.shape[0] - 1
    cb = cost[basis]
    T[m, :-1] = cb @ T[:m, :-1] - cost
    T[m, -1] = cb @ T[:m, -1]


def _iterate(T, basis, ncols, max_iter, pivot_tol, cost):
    """Run simplex pivots on tableau ``T`` whose last row holds z_j - c_j
    for the column costs ``cost``.

    Only the first ``ncols`` columns may enter.  Returns the iteration count.
    """
    m = T.shape[0] - 1
    obj = T[m]
    it = 0
    while True:
        _reprice(T, basis, cost)
        entering = -1
        for j in range(ncols):
            if obj[j] > pivot_tol:
                entering = j
                break
        if entering < 0:
            return it
        if it >= max_iter:
            raise NumericalStall(f"simplex exceeded {max_iter} iterations")
        col = T[:m, entering]
        best = None
        leave = -1
        for i in range(m):
            if col[i] > pivot_tol:
                ratio = T[i, -1] / col[i]
                if (
                    best is None
                    or ratio < best - 1e-14 * max(1.0, abs(best))
                    or (abs(ratio - best) <= 1e-14 * max(1.0, abs(best)) and basis[i] < basis[leave])
                ):
                    best = ratio
                    leave = i
        if leave < 0:
            raise LPInfeasible("objective unbounded below")
        _pivot(T, basis, leave, entering)
        it += 1


def _phase_one(A, b, pivot_tol, max_iter):
    m, k = A.shape
    A = A.copy()
    b = b.copy()
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1
    T = np.zeros((m + 1, k + m + 1))
    T[:m, :k] = A
    T[:m, k : k + m] = np.eye(m)
    T[:m, -1] = b
    basis = list(range(k, k + m))
    cost = np.concatenate([np.zeros(k), np.ones(m)])
    it = _iterate(T, basis, k, max_iter, pivot_tol, cost)
    return T, basis, it


def feasibility_residual(A, b, pivot_tol=PIVOT_TOL, max_iter=None) -> float:
    """L1 residual of the best phase-one point; zero means A x = b, x >= 0 is feasible."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    m, k = A.shape
    if max_iter is None:
        max_iter = 10 * (m + k)
    T, _, _ = _phase_one(A, b, pivot_tol, max_iter)
    return max(float(T[m, -1]), 0.0)


def linprog_eq(c, A, b, pivot_tol=PIVOT_TOL, feas_tol=1e-9, max_iter=None) -> LPResult:
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    m, k = A.shape
    if max_iter is None:
        max_iter = 10 * (m + k)

    T, basis, it1 = _phase_one(A, b, pivot_tol, max_iter)
    if T[m, -1] > feas_tol * max(1.0, float(np.abs(b).max(initial=0.0))):
        raise LPInfeasible(f"phase one residual {T[m, -1]:.3e}")

    # drive remaining artificials out of the basis, dropping redundant rows
    keep = []
    for i in range(m):
        if basis[i] >= k:
            cand = [j for j in range(k) if abs(T[i, j]) > pivot_tol]
            if cand:
                _pivot(T, basis, i, cand[0])
                keep.append(i)
        else:
            keep.append(i)
    rows = [T[i, :k].tolist() + [T[i, -1]] for i in keep]
    basis = [basis[i] for i in keep]
    T2 = np.zeros((len(rows) + 1, k + 1))
    if rows:
        T2[:-1] = rows
    it2 = _iterate(T2, basis, k, max_iter, pivot_tol, c)

    x = np.zeros(k)
    for i, j in enumerate(basis):
        x[j] = max(T2[i, -1], 0.0)
    return LPResult(x=x, fun=float(c @ x), iterations=it1 + it2)
