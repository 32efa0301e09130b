"""Randomized (or certified) decision procedures for H2-convexity,
H2-balancedness, H2-absorbedness and the idempotent decomposition.

Every check returns a :class:`CheckReport`.  A ``Fail`` carries a witness
dict that :func:`recheck` can re-verify against the set without any of the
sampling state.  All checks are deterministic in ``(seed, trials)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from .core import E, ONE, ZERO, Bihyperbolic, modulus, preceq
from .errors import PreconditionFailed, UnsupportedSet
from .linear import HVector, project
from .sets import Product, sample_box, sample_members


class Verdict(str, Enum):
    CERTIFIED = "CertifiedPass"
    SAMPLED = "SampledPass"
    FAIL = "Fail"

    @property
    def passed(self) -> bool:
        return self is not Verdict.FAIL


@dataclass
class CheckReport:
    check: str
    verdict: Verdict
    trials: int
    seed: int
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict.passed

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "verdict": self.verdict.value,
            "trials": self.trials,
            "seed": self.seed,
            "witness": encode(self.witness),
            "details": encode(self.details),
        }


def encode(obj):
    """JSON-ready form of witness values."""
    if isinstance(obj, HVector):
        return obj.to_json()
    if isinstance(obj, Bihyperbolic):
        return {"idempotent": list(obj.lam)}
    if isinstance(obj, dict):
        return {k: encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, Enum):
        return obj.value
    return obj


def decode(obj):
    if isinstance(obj, dict):
        if "comps" in obj:
            return HVector.from_json(obj)
        if set(obj) == {"idempotent"}:
            return Bihyperbolic(obj["idempotent"])
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    return obj


def _fail(check, trials, seed, witness, **details):
    return CheckReport(check, Verdict.FAIL, trials, seed, witness, details)


# -- scalar enumerations --------------------------------------------------------------


def _subset_sums():
    """e_i, e_i + e_j, e_i + e_j + e_k."""
    out = []
    for r in (1, 2, 3):
        for idx in itertools.combinations(range(4), r):
            out.append(sum((E[i] for i in idx), ZERO))
    return out


def unit_interval_scalars():
    """0 ⪯ lam ⪯ 1 cases the convexity argument splits on."""
    return [ZERO, ONE] + _subset_sums()


def unit_modulus_scalars():
    """All sixteen sign patterns, i.e. every lam with |lam| = 1."""
    return [Bihyperbolic(*s) for s in itertools.product((1.0, -1.0), repeat=4)]


def balanced_scalars():
    out = [ZERO] + _subset_sums()
    out += [-s for s in _subset_sums()]
    return out + unit_modulus_scalars()


def _scalars(rng, fixed, trials, low):
    for k in range(trials):
        if k < len(fixed):
            yield fixed[k]
        else:
            yield Bihyperbolic(*rng.uniform(low, 1.0, 4))


# -- checks ---------------------------------------------------------------------------


def _structured(S) -> list:
    """Predicate probe points and their member e_i-projections."""
    if isinstance(S, Product):
        return []
    out = list(S.probes())
    out += [project(x, i) for x in S.probes() for i in range(1, 5)]
    return out


def check_h2_convex(S, trials: int = 1000, seed: int = 0, certify: bool = True) -> CheckReport:
    if certify and isinstance(S, Product):
        # each part is a real convex body, so the product is H2-convex
        return CheckReport("h2_convex", Verdict.CERTIFIED, 0, seed, details={"reason": "product"})
    rng = np.random.default_rng(seed)
    pool = sample_members(S, rng, min(trials, 256) + 1)
    pool += [x for x in _structured(S) if S.contains(x)]
    for k, lam in enumerate(_scalars(rng, unit_interval_scalars(), trials, 0.0)):
        x = pool[rng.integers(len(pool))]
        y = pool[rng.integers(len(pool))]
        z = lam * x + (ONE - lam) * y
        if not S.contains(z):
            return _fail("h2_convex", k + 1, seed, {"kind": "convex", "x": x, "y": y, "lam": lam})
    return CheckReport("h2_convex", Verdict.SAMPLED, trials, seed)


def check_balanced(S, trials: int = 1000, seed: int = 0, certify: bool = True) -> CheckReport:
    if certify and isinstance(S, Product) and S.is_symmetric():
        # origin-symmetric convex parts are real-balanced
        return CheckReport("balanced", Verdict.CERTIFIED, 0, seed, details={"reason": "symmetric product"})
    rng = np.random.default_rng(seed)
    pool = sample_members(S, rng, min(trials, 256))
    for k, lam in enumerate(_scalars(rng, balanced_scalars(), trials, -1.0)):
        x = pool[k % len(pool)] if k < len(pool) else pool[rng.integers(len(pool))]
        if not S.contains(lam * x):
            return _fail("balanced", k + 1, seed, {"kind": "balanced", "x": x, "lam": lam})
    return CheckReport("balanced", Verdict.SAMPLED, trials, seed)


def check_absorbing(S, probes, trials: int = 64, seed: int = 0, max_halvings: int = 60) -> CheckReport:
    """For each probe, shrink eps = 2^-k until every sampled t with
    0 ⪯ t ⪯ eps keeps t*x inside ``S``."""
    probes = [HVector.from_json(p) for p in probes]
    if not probes:
        raise PreconditionFailed("check_absorbing needs at least one probe")
    rng = np.random.default_rng(seed)
    fixed = unit_interval_scalars()
    found = []
    total = 0
    for x in probes:
        witness = None
        for k in range(max_halvings + 1):
            eps = 2.0 ** -k
            witness = None
            for j in range(trials):
                t = fixed[j] if j < len(fixed) else Bihyperbolic(*rng.uniform(0.0, 1.0, 4))
                t = eps * t
                total += 1
                if not S.contains(t * x):
                    witness = {"kind": "absorbing", "x": x, "t": t, "eps": Bihyperbolic.real(eps)}
                    break
            if witness is None:
                found.append(eps)
                break
        if witness is not None:
            return _fail("absorbing", total, seed, witness, eps_found=found)
    return CheckReport("absorbing", Verdict.SAMPLED, total, seed, details={"eps_found": found})


def default_probes(dim: int, count: int = 16, seed: int = 0, spread: float = 4.0) -> list:
    """Deterministic probe vectors: e_i-supported ones, then Gaussian ones."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(4):
        c = np.zeros((4, dim))
        c[i] = spread
        out.append(HVector(c))
    while len(out) < count:
        out.append(HVector(spread * rng.standard_normal((4, dim))))
    return out[:count]


def check_decomposition(S, trials: int = 1000, seed: int = 0, certify: bool = True) -> CheckReport:
    """x in S  <=>  e_i x in the e_i-slice of S for every i."""
    if certify and isinstance(S, Product):
        return CheckReport("decomposition", Verdict.CERTIFIED, 0, seed, details={"reason": "product"})
    rng = np.random.default_rng(seed)
    pool = sample_members(S, rng, min(trials, 256))
    fixed = _structured(S)
    for k in range(trials):
        mode = k % 3
        if k < len(fixed):
            x = fixed[k]
        elif mode == 0:
            # assemble components from different members
            parts = [pool[rng.integers(len(pool))] for _ in range(4)]
            x = HVector(np.array([p.comps[i] for i, p in enumerate(parts)]))
        elif mode == 1:
            x = pool[rng.integers(len(pool))]
        else:
            x = sample_box(S, rng)
        inside = S.contains(x)
        sliced = all(S.contains(project(x, i)) for i in range(1, 5))
        if inside != sliced:
            return _fail("decomposition", k + 1, seed, {"kind": "decomposition", "x": x},
                         member=inside, slices_member=sliced)
    return CheckReport("decomposition", Verdict.SAMPLED, trials, seed)


def minkowski_sum_subset_check(S, indices, trials: int = 1000, seed: int = 0) -> CheckReport:
    """sum_{i in indices} e_i x_i in S for x_i in S (needs 0 in S)."""
    if not isinstance(S, Product):
        raise UnsupportedSet("minkowski_sum_subset_check needs a product set")
    indices = [int(i) for i in indices]
    if len(set(indices)) != len(indices) or len(indices) not in (2, 3) or not set(indices) <= {1, 2, 3, 4}:
        raise PreconditionFailed(f"need 2 or 3 distinct indices in 1..4, got {indices}")
    if not S.contains(HVector.zeros(S.dim)):
        raise PreconditionFailed("0 is not a member of the set")
    rng = np.random.default_rng(seed)
    pool = sample_members(S, rng, min(trials, 256))
    for k in range(trials):
        xs = [pool[rng.integers(len(pool))] for _ in indices]
        z = HVector.zeros(S.dim)
        for i, x in zip(indices, xs):
            z = z + project(x, i)
        if not S.contains(z):
            return _fail("minkowski_sum", k + 1, seed, {"kind": "minkowski", "xs": xs, "indices": indices})
    return CheckReport("minkowski_sum", Verdict.SAMPLED, trials, seed, details={"indices": indices})


def check_idempotent_stability(S, trials: int = 1000, seed: int = 0) -> CheckReport:
    """e_i x in S for every member x and every i."""
    rng = np.random.default_rng(seed)
    pool = sample_members(S, rng, min(trials, 256))
    for k in range(trials):
        x = pool[k] if k < len(pool) else pool[rng.integers(len(pool))]
        for i in range(1, 5):
            if not S.contains(project(x, i)):
                return _fail("ei_stability", k + 1, seed, {"kind": "stability", "x": x, "i": i})
    return CheckReport("ei_stability", Verdict.SAMPLED, trials, seed)


def check_slice_balanced(S, trials: int = 1000, seed: int = 0) -> CheckReport:
    """Each e_i-slice is balanced over the reals: a e_i x in S for |a| <= 1."""
    rng = np.random.default_rng(seed)
    pool = sample_members(S, rng, min(trials, 256))
    fixed = [0.0, 1.0, -1.0]
    for k in range(trials):
        x = pool[rng.integers(len(pool))]
        a = fixed[k] if k < len(fixed) else float(rng.uniform(-1.0, 1.0))
        for i in range(1, 5):
            if not S.contains(a * project(x, i)):
                return _fail("slice_balanced", k + 1, seed, {"kind": "slice_balanced", "x": x, "i": i, "a": a})
    return CheckReport("slice_balanced", Verdict.SAMPLED, trials, seed)


def recheck(S, witness: dict) -> bool:
    """True when ``witness`` still demonstrates a violation for ``S``."""
    w = decode(witness)
    kind = w["kind"]
    if kind == "convex":
        lam = w["lam"]
        ok_lam = preceq(ZERO, lam) and preceq(lam, ONE)
        z = lam * w["x"] + (ONE - lam) * w["y"]
        return ok_lam and S.contains(w["x"]) and S.contains(w["y"]) and not S.contains(z)
    if kind == "balanced":
        lam = w["lam"]
        return preceq(modulus(lam), ONE) and S.contains(w["x"]) and not S.contains(lam * w["x"])
    if kind == "absorbing":
        t, eps = w["t"], w["eps"]
        return preceq(ZERO, t) and preceq(t, eps) and not S.contains(t * w["x"])
    if kind == "decomposition":
        x = w["x"]
        return S.contains(x) != all(S.contains(project(x, i)) for i in range(1, 5))
    if kind == "minkowski":
        z = HVector.zeros(S.dim)
        for i, x in zip(w["indices"], w["xs"]):
            z = z + project(x, i)
        return all(S.contains(x) for x in w["xs"]) and not S.contains(z)
    if kind == "stability":
        return S.contains(w["x"]) and not S.contains(project(w["x"], w["i"]))
    if kind == "slice_balanced":
        a = w["a"]
        return abs(a) <= 1 and S.contains(w["x"]) and not S.contains(a * project(w["x"], w["i"]))
    if kind == "unit_scaling":
        from .sets import scale

        x = w["x"]
        return scale(w["lam"], S).contains(x) != S.contains(x)
    if kind == "modulus_scaling":
        from .sets import scale

        x = w["x"]
        return scale(w["lam"], S).contains(x) != scale(modulus(w["lam"]), S).contains(x)
    raise ValueError(f"unknown witness kind {kind!r}")


def _scaling_points(S, T, rng, trials):
    """Members of S, members of T and box points around both, interleaved."""
    pool_s = sample_members(S, rng, min(trials, 128))
    pool_t = sample_members(T, rng, min(trials, 128))
    for k in range(trials):
        mode = k % 3
        if mode == 0:
            yield pool_s[rng.integers(len(pool_s))]
        elif mode == 1:
            yield pool_t[rng.integers(len(pool_t))]
        else:
            yield sample_box(S if rng.random() < 0.5 else T, rng)


def check_unit_scaling(S, lam, trials: int = 1000, seed: int = 0) -> CheckReport:
    """lam S = S for |lam| = 1, compared on sampled points."""
    from .sets import scale

    lam = lam if isinstance(lam, Bihyperbolic) else Bihyperbolic(lam)
    if not modulus(lam).isclose(ONE, 0.0):
        raise PreconditionFailed(f"|lam| must equal 1, got {modulus(lam)!r}")
    T = scale(lam, S)
    rng = np.random.default_rng(seed)
    for k, x in enumerate(_scaling_points(S, T, rng, trials)):
        if T.contains(x) != S.contains(x):
            return _fail("unit_scaling", k + 1, seed, {"kind": "unit_scaling", "x": x, "lam": lam})
    return CheckReport("unit_scaling", Verdict.SAMPLED, trials, seed, details={"lam": lam})


def check_modulus_scaling(S, lam, trials: int = 1000, seed: int = 0) -> CheckReport:
    """lam S = |lam| S for lam outside the zero divisors."""
    from .core import is_zero_divisor
    from .sets import scale

    lam = lam if isinstance(lam, Bihyperbolic) else Bihyperbolic(lam)
    if is_zero_divisor(lam):
        raise PreconditionFailed(f"{lam!r} is a zero divisor")
    T, U = scale(lam, S), scale(modulus(lam), S)
    rng = np.random.default_rng(seed)
    for k, x in enumerate(_scaling_points(T, U, rng, trials)):
        if T.contains(x) != U.contains(x):
            return _fail("modulus_scaling", k + 1, seed, {"kind": "modulus_scaling", "x": x, "lam": lam})
    return CheckReport("modulus_scaling", Verdict.SAMPLED, trials, seed, details={"lam": lam})
