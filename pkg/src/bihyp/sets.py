"""Subsets of H2^n: idempotent products of real convex bodies and
predicate sets defined by a rule on the idempotent coordinates.

Membership on closed boundaries carries a small tolerance (``MEMBER_TOL``);
open sets compare strictly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Bihyperbolic, as_bihyperbolic, preceq, prec, to_json as bh_json
from .errors import DimensionMismatch, InvalidInput, SamplingFailure, UnsupportedSet
from .linear import ComponentNorm, HVector
from .simplex import feasibility_residual

MEMBER_TOL = 1e-9


# -- real convex bodies -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class PolytopeHull:
    """Convex hull of a finite vertex list (a closed set)."""

    vertices: np.ndarray

    def __post_init__(self):
        V = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if V.shape[0] < 1 or V.size == 0:
            raise InvalidInput("a polytope hull needs at least one vertex")
        if not np.all(np.isfinite(V)):
            raise InvalidInput("non-finite vertex")
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def contains(self, v, tol: float = MEMBER_TOL) -> bool:
        v = np.asarray(v, dtype=float)
        if v.shape != (self.dim,):
            raise DimensionMismatch(f"point of dim {v.shape} vs hull dim {self.dim}")
        V = self.vertices
        if len(V) == 1:
            return bool(np.all(np.abs(v - V[0]) <= tol * max(1.0, float(np.abs(V[0]).max()))))
        lo, hi = V.min(axis=0), V.max(axis=0)
        slack = tol * max(1.0, float(np.abs(V).max()))
        if np.any(v < lo - slack) or np.any(v > hi + slack):
            return False
        A = np.vstack([V.T, np.ones((1, len(V)))])
        b = np.concatenate([v, [1.0]])
        return feasibility_residual(A, b) <= tol * max(1.0, float(np.abs(b).max()))

    def radius(self) -> float:
        return float(np.abs(self.vertices).max())

    def is_symmetric(self) -> bool:
        return all(self.contains(-v) for v in self.vertices)

    def scaled(self, a: float) -> "PolytopeHull":
        if a == 0.0:
            return PolytopeHull(np.zeros((1, self.dim)))
        return PolytopeHull(a * self.vertices)

    def sample(self, rng, dim: int) -> np.ndarray:
        w = rng.dirichlet(np.ones(len(self.vertices)))
        return w @ self.vertices

    def landmarks(self, dim: int) -> list:
        return [v.copy() for v in self.vertices]

    def to_json(self):
        return {"hull": self.vertices.tolist()}


@dataclass(frozen=True)
class NormBall:
    """{v : ||v||_p < r} (open) or {v : ||v||_p <= r} (closed), any dimension."""

    p: ComponentNorm = ComponentNorm.P2
    radius: float = 1.0
    closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, "p", ComponentNorm.parse(self.p))
        r = float(self.radius)
        if not (math.isfinite(r) and r > 0):
            raise InvalidInput(f"ball radius must be positive, got {self.radius}")
        object.__setattr__(self, "radius", r)

    dim = None

    def contains(self, v, tol: float = MEMBER_TOL) -> bool:
        n = self.p(v)
        if self.closed:
            return n <= self.radius + tol * max(1.0, self.radius)
        return n < self.radius

    def is_symmetric(self) -> bool:
        return True

    def scaled(self, a: float):
        if a == 0.0:
            return None
        return NormBall(self.p, abs(a) * self.radius, self.closed)

    def sample(self, rng, dim: int) -> np.ndarray:
        if self.p is ComponentNorm.PINF:
            return rng.uniform(-self.radius, self.radius, dim) * (1 - 1e-12 * (not self.closed))
        g = rng.standard_normal(dim)
        if self.p is ComponentNorm.P1:
            g = rng.laplace(size=dim)
        nrm = self.p(g)
        if nrm == 0.0:
            return np.zeros(dim)
        rad = self.radius * rng.random() ** (1.0 / dim)
        out = g * (rad / nrm)
        if not self.closed and self.p(out) >= self.radius:
            out *= 1 - 1e-12
        return out

    def landmarks(self, dim: int) -> list:
        r = self.radius if self.closed else self.radius * (1 - 1e-9)
        pts = []
        for k in range(dim):
            for s in (1.0, -1.0):
                v = np.zeros(dim)
                v[k] = s * r
                pts.append(v)
        return pts

    def to_json(self):
        p = {"p1": 1, "p2": 2, "pinf": "inf"}[self.p.value]
        return {"ball": {"p": p, "r": self.radius, "closed": self.closed}}


def _body_radius(body) -> float:
    return body.radius if isinstance(body, NormBall) else body.radius()


RealConvexBody = (PolytopeHull, NormBall)


def body_from_json(obj):
    if isinstance(obj, RealConvexBody):
        return obj
    if not isinstance(obj, dict):
        raise InvalidInput(f"bad body descriptor {obj!r}")
    if "hull" in obj:
        return PolytopeHull(obj["hull"])
    if "ball" in obj:
        b = obj["ball"]
        return NormBall(b.get("p", 2), b.get("r", 1.0), bool(b.get("closed", True)))
    raise InvalidInput(f"bad body descriptor {obj!r}")


# -- H2 sets ------------------------------------------------------------------------


class Product:
    """sum_i e_i S_i: x is a member iff every component lies in its part."""

    def __init__(self, parts, dim: Optional[int] = None):
        parts = tuple(body_from_json(p) for p in parts)
        if len(parts) != 4:
            raise InvalidInput("a product set needs exactly four parts")
        dims = {p.dim for p in parts if isinstance(p, PolytopeHull)}
        if len(dims) > 1:
            raise DimensionMismatch(f"hull parts have different dims {sorted(dims)}")
        if dims:
            d = dims.pop()
            if dim is not None and dim != d:
                raise DimensionMismatch(f"declared dim {dim} but hulls have dim {d}")
            dim = d
        self.parts = parts
        self.dim = int(dim) if dim is not None else 1

    def contains(self, x: HVector, tol: float = MEMBER_TOL) -> bool:
        if x.dim != self.dim:
            raise DimensionMismatch(f"vector dim {x.dim} vs set dim {self.dim}")
        c = x.comps
        return all(part.contains(c[i], tol) for i, part in enumerate(self.parts))

    def radii(self) -> list:
        return [_body_radius(p) for p in self.parts]

    def sample(self, rng) -> HVector:
        return HVector._wrap(np.array([p.sample(rng, self.dim) for p in self.parts]))

    def landmarks(self) -> list:
        out = []
        zero = HVector.zeros(self.dim)
        if self.contains(zero):
            out.append(zero)
        marks = [p.landmarks(self.dim) for p in self.parts]
        for k in range(max(len(m) for m in marks)):
            out.append(HVector(np.array([m[k % len(m)] for m in marks])))
        return out

    def is_symmetric(self) -> bool:
        return all(p.is_symmetric() for p in self.parts)

    def to_json(self):
        return {"product": [p.to_json() for p in self.parts], "dim": self.dim}

    def __repr__(self):
        return f"Product({self.to_json()})"


# predicate rules: name -> (membership, proposal, landmarks, default sampling bound)


def _abs_sum_lt(x: HVector, c: float, **_) -> bool:
    return float(np.abs(x.comps).sum()) < c


def _abs_sum_propose(rng, dim, c: float, **_):
    d = 4 * dim
    u = rng.laplace(size=d)
    s = np.abs(u).sum()
    return HVector(u * (c * rng.random() ** (1.0 / d) / s))


def _modulus_lt_or_one(x: HVector, c: float = 0.5, **_) -> bool:
    # {xi : |xi| < c componentwise, for every entry} union {(1, ..., 1)}
    a = x.comps
    return bool(np.all(np.abs(a) < c)) or bool(np.all(a == 1.0))


def _modulus_propose(rng, dim, c: float = 0.5, **_):
    return HVector(rng.uniform(-c, c, size=(4, dim)))


class LambdaPredicate:
    """A subset of H2^n given by a deterministic rule on the idempotent
    coordinates of its entries.

    Built-in rules:

    ``abs_sum_lt``         sum of |lambda| over all entries < c
    ``modulus_lt_or_one``  {|xi| < c componentwise} together with the all-ones vector
    ``seminorm_ball``      {x : p(x - center) < radius} for each listed seminorm
                           (``strict``) or <= radius otherwise
    """

    RULES = ("abs_sum_lt", "modulus_lt_or_one", "seminorm_ball")

    def __init__(self, rule: str, dim: int = 1, **params):
        if rule not in self.RULES:
            raise InvalidInput(f"unknown predicate rule {rule!r}")
        self.rule = rule
        self.dim = int(dim)
        if self.dim < 1:
            raise InvalidInput("dim must be positive")
        if rule == "abs_sum_lt":
            params.setdefault("c", 2.0)
            params["c"] = float(params["c"])
        elif rule == "modulus_lt_or_one":
            params.setdefault("c", 0.5)
            params["c"] = float(params["c"])
        else:
            sn = params.get("seminorms")
            if not sn:
                raise InvalidInput("seminorm_ball needs at least one seminorm")
            params["seminorms"] = tuple(sn)
            params["radius"] = as_bihyperbolic(params.get("radius", 1.0))
            c = params.get("center")
            params["center"] = HVector.zeros(self.dim) if c is None else HVector.from_json(c)
            if params["center"].dim != self.dim:
                raise DimensionMismatch("center dim differs from set dim")
            params["strict"] = bool(params.get("strict", True))
            params["bound"] = float(params.get("bound", 2.0))
        self.params = params

    def contains(self, x: HVector, tol: float = MEMBER_TOL) -> bool:
        if x.dim != self.dim:
            raise DimensionMismatch(f"vector dim {x.dim} vs set dim {self.dim}")
        if self.rule == "abs_sum_lt":
            return _abs_sum_lt(x, **self.params)
        if self.rule == "modulus_lt_or_one":
            return _modulus_lt_or_one(x, **self.params)
        p = self.params
        u = x - p["center"]
        eps = p["radius"]
        for sn in p["seminorms"]:
            val = sn(u)
            if p["strict"]:
                if not prec(val, eps):
                    return False
            elif not preceq(val, eps, tol):
                return False
        return True

    def propose(self, rng, scale: float = 1.0) -> HVector:
        """A candidate point; callers still test membership."""
        if self.rule == "abs_sum_lt":
            return _abs_sum_propose(rng, self.dim, **self.params)
        if self.rule == "modulus_lt_or_one":
            return _modulus_propose(rng, self.dim, **self.params)
        p = self.params
        u = HVector(rng.standard_normal((4, self.dim)))
        vals = [sn(u) for sn in p["seminorms"]]
        s = np.max(np.array([v.lam for v in vals]), axis=0)
        eps = np.array(p["radius"].lam)
        t = rng.random(4)
        lam = np.where(s > 0, t * eps / np.where(s > 0, s, 1.0), t * p["bound"] * scale)
        return p["center"] + HVector._wrap(lam[:, None] * u.comps)

    def bound(self) -> float:
        if self.rule in ("abs_sum_lt", "modulus_lt_or_one"):
            return max(self.params["c"], 1.0)
        return self.params["bound"]

    def landmarks(self) -> list:
        if self.rule == "abs_sum_lt":
            return [HVector.zeros(self.dim)]
        if self.rule == "modulus_lt_or_one":
            return [HVector.zeros(self.dim), HVector(np.ones((4, self.dim)))]
        return [self.params["center"]]

    def probes(self) -> list:
        """Structured test points that straddle the rule's boundary."""
        ones = np.ones((4, self.dim))
        if self.rule == "abs_sum_lt":
            # each slice has mass 3c/8 < c, all four together 3c/2 > c
            return [HVector(ones * (3.0 * self.params["c"] / (8.0 * self.dim)))]
        if self.rule == "modulus_lt_or_one":
            return [HVector(ones)]
        return []

    def to_json(self):
        d = {"rule": self.rule, "dim": self.dim}
        for k, v in self.params.items():
            if k == "seminorms":
                from .seminorms import seminorm_to_json

                d[k] = [seminorm_to_json(s) for s in v]
            elif isinstance(v, Bihyperbolic):
                d[k] = bh_json(v)
            elif isinstance(v, HVector):
                d[k] = v.to_json()
            else:
                d[k] = v
        return {"lambda_predicate": d}

    def __repr__(self):
        return f"LambdaPredicate({self.rule!r}, dim={self.dim})"


H2Set = (Product, LambdaPredicate)


def set_from_json(obj):
    if isinstance(obj, H2Set):
        return obj
    if not isinstance(obj, dict):
        raise InvalidInput(f"bad set descriptor {obj!r}")
    if "product" in obj:
        return Product(obj["product"], obj.get("dim"))
    if "lambda_predicate" in obj:
        d = dict(obj["lambda_predicate"])
        rule = d.pop("rule", None)
        dim = d.pop("dim", 1)
        if rule == "seminorm_ball":
            from .seminorms import seminorm_from_json

            d["seminorms"] = [seminorm_from_json(s) for s in d.get("seminorms", [])]
        return LambdaPredicate(rule, dim, **d)
    raise InvalidInput(f"bad set descriptor {obj!r}")


def set_to_json(S) -> dict:
    return S.to_json()


def contains(S, x: HVector, tol: float = MEMBER_TOL) -> bool:
    return S.contains(x, tol)


def scale(lam, S):
    """lam * S for a product set: part i is scaled by lambda_i."""
    if not isinstance(S, Product):
        raise UnsupportedSet("only product sets can be scaled")
    lam = as_bihyperbolic(lam)
    parts = []
    for a, part in zip(lam.lam, S.parts):
        if a == 0.0:
            parts.append(PolytopeHull(np.zeros((1, S.dim))))
        else:
            parts.append(part.scaled(a))
    return Product(parts, S.dim)


# -- sampling -------------------------------------------------------------------------


def sample_members(S, rng, count: int, max_attempts: Optional[int] = None) -> list:
    """Landmark members first, then random members of ``S``."""
    out = [x for x in S.landmarks() if S.contains(x)]
    if isinstance(S, Product):
        while len(out) < count:
            out.append(S.sample(rng))
        return out[: max(count, 1)]
    if max_attempts is None:
        max_attempts = 200 * max(count, 1)
    attempts = 0
    while len(out) < count and attempts < max_attempts:
        attempts += 1
        cand = S.propose(rng)
        if S.contains(cand):
            out.append(cand)
    if not out:
        raise SamplingFailure(f"no members of {S!r} found in {attempts} attempts")
    return out[: max(count, 1)]


def sample_box(S, rng, spread: float = 1.5) -> HVector:
    """Uniform point in a box around the set, per-component extents."""
    if isinstance(S, Product):
        r = np.array(S.radii())[:, None] * spread
        return HVector._wrap(rng.uniform(-1.0, 1.0, (4, S.dim)) * r)
    return HVector._wrap(rng.uniform(-1.0, 1.0, (4, S.dim)) * S.bound() * spread)
