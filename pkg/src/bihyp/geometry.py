"""Polytope membership routines that do not touch the simplex code.

They back the bisection gauge oracle, so they must stay independent of
:mod:`bihyp.simplex`.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def gift_wrap(points) -> np.ndarray:
    """Counter-clockwise convex hull of 2-D points by Jarvis march.

    Collinear boundary points are dropped.
    """
    pts = np.unique(np.asarray(points, dtype=float), axis=0)
    if len(pts) < 3:
        return pts
    start = min(range(len(pts)), key=lambda i: (pts[i][0], pts[i][1]))
    hull = []
    cur = start
    while True:
        hull.append(pts[cur])
        cand = (cur + 1) % len(pts)
        for i in range(len(pts)):
            if i == cur:
                continue
            c = _cross(pts[cur], pts[cand], pts[i])
            if c < 0:
                cand = i
            elif c == 0:
                # keep the farthest collinear point
                d_i = np.sum((pts[i] - pts[cur]) ** 2)
                d_c = np.sum((pts[cand] - pts[cur]) ** 2)
                if d_i > d_c:
                    cand = i
        cur = cand
        if cur == start or len(hull) > len(pts):
            break
    return np.array(hull)


def in_convex_polygon(hull: np.ndarray, p, tol: float = 1e-12) -> bool:
    """Half-plane test against every edge of a CCW hull."""
    p = np.asarray(p, dtype=float)
    k = len(hull)
    if k == 1:
        return bool(np.all(np.abs(p - hull[0]) <= tol))
    if k == 2:
        a, b = hull
        ab = b - a
        t = np.dot(p - a, ab) / np.dot(ab, ab)
        return -tol <= t <= 1 + tol and np.linalg.norm(a + t * ab - p) <= tol
    for i in range(k):
        a, b = hull[i], hull[(i + 1) % k]
        edge = np.linalg.norm(b - a)
        if _cross(a, b, p) < -tol * edge:
            return False
    return True


def in_hull_lp(vertices, p, tol: float = 1e-13) -> bool:
    """Convex-combination feasibility through scipy's HiGHS backend."""
    V = np.asarray(vertices, dtype=float)
    p = np.asarray(p, dtype=float)
    m = len(V)
    A_eq = np.vstack([V.T, np.ones((1, m))])
    b_eq = np.concatenate([p, [1.0]])
    # minimise the L1 slack so that near-boundary points get a graded answer
    n = len(b_eq)
    A = np.hstack([A_eq, np.eye(n), -np.eye(n)])
    c = np.concatenate([np.zeros(m), np.ones(2 * n)])
    opts = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}
    res = linprog(c, A_eq=A, b_eq=b_eq, bounds=(0, None), method="highs", options=opts)
    if res.status != 0:
        return False
    scale = max(1.0, float(np.abs(b_eq).max()))
    mu = np.clip(res.x[:m], 0.0, None)
    if np.abs(A_eq @ mu - b_eq).sum() <= tol * scale:
        return True
    # the solver works to ~1e-10; re-solve exactly on its support before deciding
    support = np.flatnonzero(mu > 1e-12)
    if support.size == 0:
        return False
    w, *_ = np.linalg.lstsq(A_eq[:, support], b_eq, rcond=None)
    return bool(np.all(w >= -tol) and np.abs(A_eq[:, support] @ w - b_eq).sum() <= tol * scale)


def halfspaces(vertices) -> np.ndarray:
    """Facet inequalities ``a . v + b <= 0`` (rows ``[a, b]``) from qhull."""
    V = np.asarray(vertices, dtype=float)
    return ConvexHull(V).equations


def in_halfspaces(H: np.ndarray, p, rtol: float = 1e-14) -> bool:
    # slack relative to each facet offset, so thin-margin facets stay sharp
    p = np.asarray(p, dtype=float)
    return bool(np.all(H[:, :-1] @ p + H[:, -1] <= rtol * np.maximum(np.abs(H[:, -1]), np.abs(p).max(initial=0.0))))
