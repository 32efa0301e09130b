"""Minkowski gauges.

The real gauge of a body is computed by closed form (p-balls) or by the
simplex LP ``min sum(mu) s.t. V mu = x, mu >= 0`` (hulls).  The H2 gauge
of a product set is assembled componentwise.  :func:`gauge_bisection` is an
independent oracle that only ever asks membership questions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Bihyperbolic
from .errors import OriginNotInterior, UnsupportedSet
from .geometry import gift_wrap, halfspaces, in_convex_polygon, in_halfspaces
from .linear import HVector
from .sets import LambdaPredicate, NormBall, PolytopeHull, Product
from .simplex import feasibility_residual, linprog_eq


class Method(str, Enum):
    LP = "LP"
    CLOSED_FORM = "ClosedForm"
    BISECTION = "Bisection"


@dataclass(frozen=True)
class GaugeResult:
    value: Bihyperbolic
    per_component: tuple
    method: Method

    def to_json(self) -> dict:
        return {
            "value": list(self.value.lam),
            "per_component": list(self.per_component),
            "method": self.method.value,
        }


_interior_cache: dict = {}


def origin_interior(V: np.ndarray) -> bool:
    """0 in int conv(V)  <=>  every +-unit vector is a nonnegative combination of V."""
    key = V.tobytes() + bytes(str(V.shape), "ascii")
    hit = _interior_cache.get(key)
    if hit is not None:
        return hit
    n = V.shape[1]
    ok = True
    for k in range(n):
        for s in (1.0, -1.0):
            d = np.zeros(n)
            d[k] = s
            if feasibility_residual(V.T, d) > 1e-9:
                ok = False
                break
        if not ok:
            break
    if len(_interior_cache) > 4096:
        _interior_cache.clear()
    _interior_cache[key] = ok
    return ok


def real_gauge(C, x, tol: float = 1e-9) -> float:
    """inf{a > 0 : x in a C} for a body with 0 in its interior."""
    x = np.asarray(x, dtype=float)
    if isinstance(C, NormBall):
        return C.p(x) / C.radius
    if not isinstance(C, PolytopeHull):
        raise UnsupportedSet(f"no gauge for {C!r}")
    V = C.vertices
    if not origin_interior(V):
        raise OriginNotInterior()
    if not np.any(x):
        return 0.0
    return linprog_eq(np.ones(len(V)), V.T, x).fun


def h2_gauge(S, x: HVector, tol: float = 1e-9) -> GaugeResult:
    if not isinstance(S, Product):
        raise UnsupportedSet("the H2 gauge is computed for product sets")
    vals = []
    for i, part in enumerate(S.parts):
        try:
            vals.append(real_gauge(part, x.comps[i], tol))
        except OriginNotInterior as err:
            raise OriginNotInterior(f"component {i + 1}: {err}", component=i + 1) from err
    method = Method.CLOSED_FORM if all(isinstance(p, NormBall) for p in S.parts) else Method.LP
    return GaugeResult(Bihyperbolic(*vals), tuple(vals), method)


def _membership_oracle(C):
    """Membership test for C that never calls the simplex module."""
    if isinstance(C, NormBall):
        return lambda v: C.p(v) <= C.radius
    V = C.vertices
    if V.shape[1] == 2:
        hull = gift_wrap(V)
        return lambda v: in_convex_polygon(hull, v)
    if V.shape[1] == 1:
        lo, hi = V.min(), V.max()
        return lambda v: lo - 1e-15 <= v[0] <= hi + 1e-15
    H = halfspaces(V)
    return lambda v: in_halfspaces(H, v)


def _oracle_interior(C, member) -> bool:
    if isinstance(C, NormBall):
        return True
    n = C.vertices.shape[1]
    # small +-axis steps must stay inside
    step = 1e-7 * max(1.0, C.radius())
    for k in range(n):
        for s in (1.0, -1.0):
            d = np.zeros(n)
            d[k] = s * step
            if not member(d):
                return False
    return True


def gauge_bisection(C, x, tol: float = 1e-9, max_doublings: int = 200) -> float:
    x = np.asarray(x, dtype=float)
    member = _membership_oracle(C)
    if not _oracle_interior(C, member):
        raise OriginNotInterior()
    if not np.any(x):
        return 0.0
    hi = 1.0
    for _ in range(max_doublings):
        if member(x / hi):
            break
        hi *= 2.0
    lo = 0.0
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if member(x / mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def unit_sets(S, strict: bool) -> LambdaPredicate:
    """{x : q_B(x) < 1} (strict) or {x : q_B(x) ⪯ 1}."""
    from .seminorms import GaugeSeminorm

    if not isinstance(S, Product):
        raise UnsupportedSet("unit sets are built from product sets")
    bound = 1.5 * max(S.radii())
    return LambdaPredicate(
        "seminorm_ball", S.dim, seminorms=[GaugeSeminorm(S)], radius=1.0, strict=strict, bound=bound
    )


# -- gauge-level property checks -------------------------------------------------------


def _gauge_points(S, rng, trials):
    """Members of S and box points around it, alternating."""
    from .sets import sample_box, sample_members

    pool = sample_members(S, rng, min(trials, 256))
    for k in range(trials):
        if k % 2 == 0:
            yield pool[(k // 2) % len(pool)] if k // 2 < len(pool) else pool[rng.integers(len(pool))]
        else:
            yield sample_box(S, rng)


def _sandwich_kind(S, A, C, x, margin):
    """None if x satisfies every sandwich relation, else the violated one."""
    q = h2_gauge(S, x).per_component
    if any(abs(v - 1.0) < margin for v in q):
        return "skip"
    in_s, in_a, in_c = S.contains(x), A.contains(x), C.contains(x)
    if in_a and not in_s:
        return "sandwich_inner"
    if in_s and not in_c:
        return "sandwich_outer"
    closed = all(not isinstance(p, NormBall) or p.closed for p in S.parts)
    opened = all(isinstance(p, NormBall) and not p.closed for p in S.parts)
    if closed and in_s != in_c:
        return "closed_equal"
    if opened and in_s != in_a:
        return "open_equal"
    return None


def check_sandwich(S, trials: int = 1000, seed: int = 0, margin: float = 1e-7):
    """A_B ⊂ S ⊂ C_B on samples; S = C_B for closed parts and S = A_B for
    open balls.  Points with a gauge component within ``margin`` of 1 are skipped."""
    from .checks import CheckReport, Verdict, _fail

    A, C = unit_sets(S, strict=True), unit_sets(S, strict=False)
    rng = np.random.default_rng(seed)
    skipped = 0
    for k, x in enumerate(_gauge_points(S, rng, trials)):
        kind = _sandwich_kind(S, A, C, x, margin)
        if kind == "skip":
            skipped += 1
        elif kind is not None:
            return _fail("sandwich", k + 1, seed, {"kind": kind, "x": x, "margin": margin})
    return CheckReport("sandwich", Verdict.SAMPLED, trials, seed, details={"skipped": skipped})


def check_gauge_definite(S, trials: int = 1000, seed: int = 0, tol: float = 1e-7):
    """For bounded S: q_B(x) = 0 forces ||x|| <= tol, and more sharply
    q_i(x) >= ||x_i||_inf / R_i for the part radii R_i."""
    from .checks import CheckReport, Verdict, _fail

    rng = np.random.default_rng(seed)
    R = np.array(S.radii())
    for k, x in enumerate(_definite_points(S, rng, trials)):
        q = np.array(h2_gauge(S, x).per_component)
        sup = np.abs(x.comps).max(axis=1)
        if np.all(q == 0.0) and np.linalg.norm(x.comps) > tol:
            return _fail("gauge_definite", k + 1, seed, {"kind": "gauge_zero", "x": x, "tol": tol})
        if np.any(q < sup / R - 1e-9 * np.maximum(1.0, sup / R)):
            return _fail("gauge_definite", k + 1, seed, {"kind": "gauge_lower", "x": x, "tol": tol})
    return CheckReport("gauge_definite", Verdict.SAMPLED, trials, seed)


def _definite_points(S, rng, trials):
    zero = HVector.zeros(S.dim)
    for k in range(trials):
        if k == 0:
            yield zero
            continue
        g = rng.standard_normal((4, S.dim))
        if k % 4 == 1:
            g[rng.random(4) < 0.5] = 0.0
        # spread magnitudes from tiny to large
        yield HVector(g * 10.0 ** rng.uniform(-10, 1))


def recheck(S, witness: dict) -> bool:
    from .checks import decode

    w = decode(witness)
    kind, x = w["kind"], w["x"]
    if kind in ("sandwich_inner", "sandwich_outer", "closed_equal", "open_equal"):
        A, C = unit_sets(S, strict=True), unit_sets(S, strict=False)
        return _sandwich_kind(S, A, C, x, w["margin"]) == kind
    if kind == "gauge_zero":
        q = h2_gauge(S, x).per_component
        return all(v == 0.0 for v in q) and np.linalg.norm(x.comps) > w["tol"]
    if kind == "gauge_lower":
        q = np.array(h2_gauge(S, x).per_component)
        lb = np.abs(x.comps).max(axis=1) / np.array(S.radii())
        return bool(np.any(q < lb - 1e-9 * np.maximum(1.0, lb)))
    raise ValueError(f"unknown witness kind {kind!r}")
