"""H2-valued metrics built from countable seminorm families, neighbourhoods
U(x, eps, p_1..p_n), and boundedness relative to a neighbourhood."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .checks import CheckReport, Verdict, _fail, decode
from .core import ONE, ZERO, Bihyperbolic, as_bihyperbolic, inverse, is_nonnegative, prec, preceq
from .errors import DimensionMismatch, InvalidInput
from .linear import HVector
from .sets import LambdaPredicate, Product, sample_members
from .seminorms import _dim_of, _random_vectors

DEFAULT_TRUNCATION = 40


@dataclass(frozen=True)
class H2Metric:
    """d(x, y) = sum_{n <= N} 2^-n p_n(x - y) / (1 + p_n(x - y)).

    A family shorter than ``truncation`` contributes only its own terms.
    """

    family: tuple
    truncation: int = DEFAULT_TRUNCATION
    space_dim: Optional[int] = None

    def __post_init__(self):
        fam = tuple(self.family)
        if not fam:
            raise InvalidInput("a metric needs a nonempty seminorm family")
        if int(self.truncation) < 1:
            raise InvalidInput("truncation must be positive")
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "truncation", int(self.truncation))

    def __call__(self, x: HVector, y: HVector) -> Bihyperbolic:
        return metric_eval(self, x, y)

    @property
    def dim(self) -> int:
        return self.space_dim or _dim_of(self.family[0])


def metric_eval(M: H2Metric, x: HVector, y: HVector) -> Bihyperbolic:
    if x.dim != y.dim:
        raise DimensionMismatch(f"dims {x.dim} and {y.dim}")
    u = x - y
    total = ZERO
    weight = 1.0
    for p in M.family[: M.truncation]:
        weight *= 0.5
        v = p(u)
        # every component of 1 + v is >= 1, so the inverse exists
        total = total + weight * v * inverse(ONE + v)
    return total


def check_metric_axioms(M: H2Metric, trials: int = 1000, seed: int = 0, tol: float = 1e-9, probes=()) -> CheckReport:
    """Nonnegativity, identity of indiscernibles on probes, symmetry,
    triangle inequality and translation invariance on random triples."""
    dim = M.dim
    rng = np.random.default_rng(seed)
    zero = HVector.zeros(dim)
    # identity: d(0, v) != 0 for nonzero probes, d(x, x) = 0
    ident = [HVector.from_json(p) for p in probes] + _random_vectors(rng, dim, 16)
    for v in ident:
        if v.is_zero():
            continue
        if M(zero, v).is_zero(1e-15):
            return _fail("metric_axioms", 1, seed, {"kind": "identity", "x": zero, "y": v})
    pts = _random_vectors(rng, dim, max(trials, 3))
    for k in range(trials):
        x = pts[k]
        y = pts[rng.integers(len(pts))]
        z = pts[rng.integers(len(pts))]
        dxy, dyx = M(x, y), M(y, x)
        if not is_nonnegative(dxy):
            return _fail("metric_axioms", k + 1, seed, {"kind": "nonnegative", "x": x, "y": y})
        if not M(x, x).is_zero(tol):
            return _fail("metric_axioms", k + 1, seed, {"kind": "self_distance", "x": x})
        if not dxy.isclose(dyx, tol):
            return _fail("metric_axioms", k + 1, seed, {"kind": "symmetry", "x": x, "y": y})
        if not preceq(M(x, z), dxy + M(y, z), tol):
            return _fail("metric_axioms", k + 1, seed, {"kind": "triangle", "x": x, "y": y, "z": z})
        if not M(x + z, y + z).isclose(dxy, tol):
            return _fail("metric_axioms", k + 1, seed, {"kind": "translation", "x": x, "y": y, "z": z})
        if not prec(dxy, ONE):
            return _fail("metric_axioms", k + 1, seed, {"kind": "below_one", "x": x, "y": y})
    return CheckReport("metric_axioms", Verdict.SAMPLED, trials, seed)


def recheck(M: H2Metric, witness: dict, tol: float = 1e-9) -> bool:
    w = decode(witness)
    kind = w["kind"]
    x, y, z = w.get("x"), w.get("y"), w.get("z")
    if kind == "identity":
        return not (x - y).is_zero() and M(x, y).is_zero(1e-15)
    if kind == "nonnegative":
        return not is_nonnegative(M(x, y))
    if kind == "self_distance":
        return not M(x, x).is_zero(tol)
    if kind == "symmetry":
        return not M(x, y).isclose(M(y, x), tol)
    if kind == "triangle":
        return not preceq(M(x, z), M(x, y) + M(y, z), tol)
    if kind == "translation":
        return not M(x + z, y + z).isclose(M(x, y), tol)
    if kind == "below_one":
        return not prec(M(x, y), ONE)
    raise ValueError(f"unknown witness kind {kind!r}")


# -- neighbourhoods --------------------------------------------------------------------


@dataclass(frozen=True)
class Neighborhood:
    """U(center, eps, p_1..p_n) = {y : p_i(y - center) < eps for all i}."""

    center: HVector
    epsilon: Bihyperbolic
    seminorms: tuple = field(default_factory=tuple)

    def __post_init__(self):
        eps = as_bihyperbolic(self.epsilon)
        if not prec(ZERO, eps):
            raise InvalidInput("epsilon must be strictly positive in every component")
        if not self.seminorms:
            raise InvalidInput("a neighbourhood needs at least one seminorm")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "seminorms", tuple(self.seminorms))
        object.__setattr__(self, "center", HVector.from_json(self.center))

    def scaled(self, lam) -> "Neighborhood":
        """lam U for a neighbourhood of 0 (eps scales by |lam|)."""
        return Neighborhood(as_bihyperbolic(lam) * self.center, abs(as_bihyperbolic(lam)) * self.epsilon, self.seminorms)

    def as_set(self) -> LambdaPredicate:
        return LambdaPredicate(
            "seminorm_ball",
            self.center.dim,
            seminorms=list(self.seminorms),
            radius=self.epsilon,
            center=self.center,
            strict=True,
        )


def neighborhood_contains(U: Neighborhood, y: HVector) -> bool:
    if y.dim != U.center.dim:
        raise DimensionMismatch(f"dims {y.dim} and {U.center.dim}")
    u = y - U.center
    return all(prec(p(u), U.epsilon) for p in U.seminorms)


def _ray_points(dim, reach, rng, count=8):
    """Far points along e_i-supported and random directions."""
    out = []
    for i in range(4):
        c = np.zeros((4, dim))
        c[i] = reach
        out.append(HVector(c))
        out.append(HVector(-c))
    for _ in range(count):
        g = rng.standard_normal((4, dim))
        out.append(HVector(g * (reach / np.abs(g).max())))
    return out


def bounded_check(S, U: Neighborhood, search_cap: int = 60, trials: int = 256, seed: int = 0) -> CheckReport:
    """Find lam = 2^k (k <= search_cap) with every sampled point of S in lam U."""
    if not U.center.is_zero():
        raise InvalidInput("bounded_check needs a neighbourhood of 0")
    rng = np.random.default_rng(seed)
    pts = sample_members(S, rng, trials)
    last = None
    for k in range(search_cap + 1):
        lam = float(2.0 ** k)
        V = U.scaled(lam)
        # probe far along rays too, so unbounded sets cannot hide
        cand = pts + [r for r in _ray_points(S.dim, 2.0 * lam, rng) if S.contains(r)]
        bad = next((x for x in cand if not neighborhood_contains(V, x)), None)
        if bad is None:
            return CheckReport("bounded", Verdict.SAMPLED, len(pts), seed, details={"lambda": lam, "k": k})
        last = (bad, lam)
    bad, lam = last
    return _fail("bounded", len(pts), seed, {"kind": "bounded", "x": bad, "lam": Bihyperbolic.real(lam)}, cap=search_cap)


def seminorm_continuity(p, x: HVector, direction: HVector, M: H2Metric, steps: int = 40):
    """Distances d(x_n, x) and |p(x_n) - p(x)| along x_n = x + 2^-n direction."""
    dist, gap = [], []
    px = p(x)
    for n in range(steps):
        xn = x + (2.0 ** -n) * direction
        dist.append(M(xn, x))
        gap.append(abs(p(xn) - px))
    return dist, gap


def check_sequential_continuity(p, q, M: H2Metric, trials: int = 200, seed: int = 0, steps: int = 40,
                                tol: float = 1e-9) -> CheckReport:
    """If p ⪯ q and q is continuous then p is: along x_n = x + 2^-n d the
    gap |p(x_n) - p(x)| stays below q(x_n - x), and both shrink with d(x_n, x)."""
    dim = M.dim
    rng = np.random.default_rng(seed)
    pts = _random_vectors(rng, dim, 2 * trials)
    for k in range(trials):
        x, d = pts[k], pts[trials + k]
        if not preceq(p(d), q(d), tol):
            return _fail("continuity", k + 1, seed, {"kind": "domination", "x": d})
        dist, gap = seminorm_continuity(p, x, d, M, steps)
        for n in range(steps):
            if not preceq(gap[n], (2.0 ** -n) * q(d), tol):
                return _fail("continuity", k + 1, seed, {"kind": "gap", "x": x, "d": d, "n": n})
        if not (dist[-1].is_zero(1e-9) and gap[-1].is_zero(1e-9 * (1.0 + float(np.max(p(x).lam))))):
            return _fail("continuity", k + 1, seed, {"kind": "limit", "x": x, "d": d, "n": steps - 1})
    return CheckReport("continuity", Verdict.SAMPLED, trials, seed)


def recheck_continuity(p, q, M: H2Metric, witness: dict, tol: float = 1e-9) -> bool:
    w = decode(witness)
    kind = w["kind"]
    if kind == "domination":
        return not preceq(p(w["x"]), q(w["x"]), tol)
    x, d, n = w["x"], w["d"], w["n"]
    dist, gap = seminorm_continuity(p, x, d, M, n + 1)
    if kind == "gap":
        return not preceq(gap[n], (2.0 ** -n) * q(d), tol)
    if kind == "limit":
        return not (dist[n].is_zero(1e-9) and gap[n].is_zero(1e-9 * (1.0 + float(np.max(p(x).lam)))))
    raise ValueError(f"unknown witness kind {kind!r}")
