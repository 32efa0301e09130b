"""H2-valued seminorms, seminorm families and their property checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import CheckReport, Verdict, _fail, balanced_scalars, decode
from .core import J1, Bihyperbolic, is_nonnegative, modulus, preceq, sup_h2
from .errors import BadIndex, InvalidInput, PreconditionFailed
from .gauge import h2_gauge
from .linear import CanonicalNorm, ComponentNorm, HVector
from .sets import Product, set_from_json


@dataclass(frozen=True)
class CoordinateSeminorm:
    """sum over kept i of ||x_i|| e_i; components outside ``kept`` are ignored."""

    kept: frozenset = frozenset({1})
    base: ComponentNorm = ComponentNorm.P2

    def __post_init__(self):
        kept = frozenset(int(i) for i in self.kept)
        if not kept or not kept <= {1, 2, 3, 4}:
            raise InvalidInput(f"kept must be a nonempty subset of 1..4, got {sorted(kept)}")
        object.__setattr__(self, "kept", kept)
        object.__setattr__(self, "base", ComponentNorm.parse(self.base))

    def __call__(self, x: HVector) -> Bihyperbolic:
        c = x.comps
        return Bihyperbolic(*(self.base(c[i]) if i + 1 in self.kept else 0.0 for i in range(4)))


class GaugeSeminorm:
    """q_B for a product set B."""

    def __init__(self, S):
        S = set_from_json(S)
        if not isinstance(S, Product):
            raise InvalidInput("a gauge seminorm needs a product set")
        self.S = S

    def __call__(self, x: HVector) -> Bihyperbolic:
        return h2_gauge(self.S, x).value

    def __repr__(self):
        return f"GaugeSeminorm({self.S!r})"


class SupFamily:
    """Componentwise H2-supremum of finitely many seminorms."""

    def __init__(self, members):
        members = tuple(members)
        if not members:
            raise InvalidInput("a sup family needs at least one member")
        self.members = members

    def __call__(self, x: HVector) -> Bihyperbolic:
        return sup_h2([p(x) for p in self.members])

    def __repr__(self):
        return f"SupFamily({list(self.members)!r})"


Seminorm = (CanonicalNorm, CoordinateSeminorm, GaugeSeminorm, SupFamily)


def evaluate(p, x: HVector) -> Bihyperbolic:
    return p(x)


def sup_family(F, m: int) -> SupFamily:
    """q_m = sup{p_1, ..., p_m}."""
    F = list(F)
    if not 1 <= m <= len(F):
        raise BadIndex(f"m must lie in 1..{len(F)}, got {m}")
    return SupFamily(F[:m])


# -- JSON descriptors -----------------------------------------------------------------


def seminorm_from_json(obj):
    if isinstance(obj, Seminorm):
        return obj
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InvalidInput(f"bad seminorm descriptor {obj!r}")
    (kind, body), = obj.items()
    if kind == "canonical_norm":
        norms = (body or {}).get("norms", ["p2"] * 4)
        if isinstance(norms, (str, int)):
            norms = [norms] * 4
        return CanonicalNorm(tuple(norms))
    if kind == "coordinate":
        return CoordinateSeminorm(frozenset(body.get("kept", [1])), body.get("base", "p2"))
    if kind == "gauge":
        return GaugeSeminorm(body["set"] if "set" in body else body)
    if kind == "sup":
        return SupFamily([seminorm_from_json(m) for m in body["members"]])
    raise InvalidInput(f"unknown seminorm kind {kind!r}")


def seminorm_to_json(p) -> dict:
    if isinstance(p, CanonicalNorm):
        return p.to_json()
    if isinstance(p, CoordinateSeminorm):
        return {"coordinate": {"kept": sorted(p.kept), "base": p.base.value}}
    if isinstance(p, GaugeSeminorm):
        return {"gauge": {"set": p.S.to_json()}}
    if isinstance(p, SupFamily):
        return {"sup": {"members": [seminorm_to_json(m) for m in p.members]}}
    raise InvalidInput(f"cannot serialise {p!r}")


def family_from_json(obj) -> list:
    if isinstance(obj, dict) and "family" in obj:
        obj = obj["family"]
    if not isinstance(obj, list) or not obj:
        raise InvalidInput("a seminorm family is a nonempty list")
    return [seminorm_from_json(m) for m in obj]


# -- checks ----------------------------------------------------------------------------


def _random_vectors(rng, dim, count, scale=2.0):
    """Landmark vectors (+-1, j1, e_i-supported), then Gaussian ones."""
    base = [
        HVector(np.ones((4, dim))),
        HVector(-np.ones((4, dim))),
        HVector(np.array([[1.0], [-1.0], [1.0], [-1.0]]) * np.ones((4, dim))),
    ]
    for i in range(4):
        c = np.zeros((4, dim))
        c[i] = 1.0
        base.append(HVector(c))
    out = base[:count]
    while len(out) < count:
        v = rng.standard_normal((4, dim)) * scale
        # zero out a random subset of components now and then
        if rng.random() < 0.25:
            v[rng.random(4) < 0.5] = 0.0
        out.append(HVector(v))
    return out


def _dim_of(p, default=1):
    if isinstance(p, GaugeSeminorm):
        return p.S.dim
    if isinstance(p, SupFamily):
        return _dim_of(p.members[0], default)
    return default


def check_seminorm_axioms(p, trials: int = 1000, seed: int = 0, tol: float = 1e-9, dim=None) -> CheckReport:
    """p(0) = 0, p >= 0, homogeneity (null-cone scalars included),
    subadditivity and the reverse triangle inequality."""
    dim = dim or _dim_of(p)
    rng = np.random.default_rng(seed)
    zero = HVector.zeros(dim)
    if not p(zero).is_zero(tol):
        return _fail("seminorm_axioms", 1, seed, {"kind": "zero", "dim": dim})
    xs = _random_vectors(rng, dim, trials)
    for x in xs:
        if not is_nonnegative(p(x), tol):
            return _fail("seminorm_axioms", trials, seed, {"kind": "nonnegative", "x": x})
    scalars = balanced_scalars()
    for k in range(trials):
        x = xs[k]
        y = xs[rng.integers(len(xs))]
        lam = scalars[k] if k < len(scalars) else Bihyperbolic(*rng.uniform(-3.0, 3.0, 4))
        px, py = p(x), p(y)
        lhs = p(lam * x)
        rhs = modulus(lam) * px
        if not (preceq(lhs, rhs, tol) and preceq(rhs, lhs, tol)):
            return _fail("seminorm_axioms", k + 1, seed, {"kind": "homogeneity", "x": x, "lam": lam})
        if not preceq(p(x + y), px + py, tol):
            return _fail("seminorm_axioms", k + 1, seed, {"kind": "subadditivity", "x": x, "y": y})
        if not preceq(modulus(px - py), p(x - y), tol):
            return _fail("seminorm_axioms", k + 1, seed, {"kind": "reverse_triangle", "x": x, "y": y})
    return CheckReport("seminorm_axioms", Verdict.SAMPLED, trials, seed)


def _kernel_mask(p):
    """Components on which p is blind, known from the constructor."""
    if isinstance(p, CoordinateSeminorm):
        return np.array([i + 1 not in p.kept for i in range(4)])
    if isinstance(p, SupFamily):
        m = np.ones(4, dtype=bool)
        for q in p.members:
            m &= _kernel_mask(q)
        return m
    return np.zeros(4, dtype=bool)


def kernel_check(p, trials: int = 1000, seed: int = 0, tol: float = 1e-12, dim=None) -> CheckReport:
    """{x : p(x) = 0} is closed under addition and H2-scaling."""
    dim = dim or _dim_of(p)
    rng = np.random.default_rng(seed)
    mask = _kernel_mask(p)

    def kernel_element():
        return HVector(rng.standard_normal((4, dim)) * 3.0 * mask[:, None])

    for k in range(trials):
        x, y = kernel_element(), kernel_element()
        lam = J1 if k == 0 else Bihyperbolic(*rng.uniform(-5.0, 5.0, 4))
        if not p(x).is_zero(tol):
            return _fail("kernel", k + 1, seed, {"kind": "kernel_member", "x": x})
        if not p(x + y).is_zero(tol):
            return _fail("kernel", k + 1, seed, {"kind": "kernel_sum", "x": x, "y": y})
        if not p(lam * x).is_zero(tol):
            return _fail("kernel", k + 1, seed, {"kind": "kernel_scale", "x": x, "lam": lam})
    return CheckReport("kernel", Verdict.SAMPLED, trials, seed, details={"kernel_components": [int(i) + 1 for i in np.flatnonzero(mask)]})


def is_separated(F, probes=(), trials: int = 1000, seed: int = 0, tol: float = 1e-12, dim=None) -> CheckReport:
    """Every nonzero probe has some member with a nonzero value."""
    F = list(F)
    dim = dim or _dim_of(F[0])
    rng = np.random.default_rng(seed)
    cands = [HVector.from_json(v) for v in probes]
    for i in range(4):
        c = np.zeros((4, dim))
        c[i] = 1.0
        cands.append(HVector(c))
    while len(cands) < trials:
        cands.append(HVector(rng.standard_normal((4, dim))))
    for k, x in enumerate(cands):
        if x.is_zero():
            raise PreconditionFailed("probes must be nonzero")
        if all(p(x).is_zero(tol) for p in F):
            return _fail("separated", k + 1, seed, {"kind": "separated", "x": x})
    return CheckReport("separated", Verdict.SAMPLED, len(cands), seed)


def check_sup_monotone(F, trials: int = 1000, seed: int = 0, dim=None) -> CheckReport:
    """q_m ⪯ q_{m+1} on sampled points."""
    F = list(F)
    dim = dim or _dim_of(F[0])
    rng = np.random.default_rng(seed)
    qs = [sup_family(F, m) for m in range(1, len(F) + 1)]
    for k, x in enumerate(_random_vectors(rng, dim, trials)):
        vals = [q(x) for q in qs]
        for m in range(len(vals) - 1):
            if not preceq(vals[m], vals[m + 1]):
                return _fail("sup_monotone", k + 1, seed, {"kind": "sup_monotone", "x": x, "m": m + 1})
    return CheckReport("sup_monotone", Verdict.SAMPLED, trials, seed)


def recheck(p, witness: dict, tol: float = 1e-9) -> bool:
    """True when ``witness`` still shows that ``p`` breaks a seminorm law.

    ``p`` is a single seminorm or, for family witnesses, a list of them.
    """
    w = decode(witness)
    kind = w["kind"]
    if kind == "zero":
        return not p(HVector.zeros(w["dim"])).is_zero(tol)
    if kind == "nonnegative":
        return not is_nonnegative(p(w["x"]), tol)
    if kind == "homogeneity":
        lhs, rhs = p(w["lam"] * w["x"]), modulus(w["lam"]) * p(w["x"])
        return not (preceq(lhs, rhs, tol) and preceq(rhs, lhs, tol))
    if kind == "subadditivity":
        return not preceq(p(w["x"] + w["y"]), p(w["x"]) + p(w["y"]), tol)
    if kind == "reverse_triangle":
        return not preceq(modulus(p(w["x"]) - p(w["y"])), p(w["x"] - w["y"]), tol)
    if kind == "kernel_member":
        return not p(w["x"]).is_zero(1e-12)
    if kind == "kernel_sum":
        return not p(w["x"] + w["y"]).is_zero(1e-12)
    if kind == "kernel_scale":
        return not p(w["lam"] * w["x"]).is_zero(1e-12)
    if kind == "separated":
        return not w["x"].is_zero() and all(q(w["x"]).is_zero(1e-12) for q in p)
    if kind == "sup_monotone":
        m = w["m"]
        return not preceq(sup_family(p, m)(w["x"]), sup_family(p, m + 1)(w["x"]))
    raise ValueError(f"unknown witness kind {kind!r}")
