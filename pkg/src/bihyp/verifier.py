"""Registry of named properties, each bound to checks over JSON instances.

A property run produces a :class:`VerifyReport`.  Every failing check in a
report carries a witness that :func:`reverify` re-evaluates from the report
JSON alone.  Expected verdicts live in the registry: the two counterexample
instances are expected to fail, every other registered instance to pass.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import checks, gauge, metric, seminorms
from .checks import CheckReport, Verdict
from .core import Bihyperbolic, from_json as bh_from_json, is_zero_divisor, modulus, to_json as bh_json
from .errors import BadInstance, BihypError, ConfigError, PreconditionFailed, UnknownProperty
from .linear import CanonicalNorm, HVector
from .metric import H2Metric
from .sets import LambdaPredicate, Product, set_from_json

PASS, FAIL = "Pass", "Fail"

# -- instances --------------------------------------------------------------------------

_CLOSED_BALL = {"ball": {"p": 2, "r": 1.0, "closed": True}}
_OPEN_BALL = {"ball": {"p": 2, "r": 1.0, "closed": False}}
_SQUARE = {"hull": [[1.0, 1.0], [1.0, -1.0], [-1.0, -1.0], [-1.0, 1.0]]}

UNIT_BALL = {"product": [_CLOSED_BALL] * 4, "dim": 2}
OPEN_UNIT_BALL = {"product": [_OPEN_BALL] * 4, "dim": 2}
MIXED = {
    "product": [
        _CLOSED_BALL,
        {"ball": {"p": 1, "r": 2.0, "closed": True}},
        _SQUARE,
        {"ball": {"p": "inf", "r": 0.5, "closed": False}},
    ],
    "dim": 2,
}
OCTAHEDRA = {
    "product": [
        {"hull": [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]},
        {"hull": [[2, 1, 0], [-2, -1, 0], [0, 1, 1], [0, -1, -1], [1, 0, 2], [-1, 0, -2]]},
        {"ball": {"p": "inf", "r": 1.5, "closed": True}},
        {"ball": {"p": 1, "r": 1.0, "closed": True}},
    ],
    "dim": 3,
}
ABS_SUM = {"lambda_predicate": {"rule": "abs_sum_lt", "c": 2.0}}
MODULUS_OR_ONE = {"lambda_predicate": {"rule": "modulus_lt_or_one", "c": 0.5}}

_EUCLID = {"canonical_norm": {"norms": ["p2"] * 4}}
_MIXED_NORM = {"canonical_norm": {"norms": ["p1", "p2", "pinf", "p2"]}}
_FIRST = {"coordinate": {"kept": [1], "base": "p2"}}
_REST = {"coordinate": {"kept": [2, 3, 4], "base": "p1"}}


# -- instance parsing --------------------------------------------------------------------

_SET_KEYS = {"product", "lambda_predicate"}
_SEMINORM_KEYS = {"canonical_norm", "coordinate", "gauge", "sup"}


def _wrap(obj) -> dict:
    """Accept a bare set, seminorm or family descriptor as an instance."""
    if isinstance(obj, list):
        return {"family": obj}
    if not isinstance(obj, dict):
        raise BadInstance(f"instance must be a JSON object or list, got {type(obj).__name__}")
    if set(obj) & _SET_KEYS:
        return {"set": obj}
    if len(obj) == 1 and set(obj) <= _SEMINORM_KEYS:
        return {"seminorm": obj}
    return dict(obj)


def canonical_instance(obj) -> dict:
    """Parse and re-serialise an instance so equal instances compare equal."""
    inst = _wrap(obj)
    out = {}
    try:
        for key, val in inst.items():
            if key in ("set", "gauge_set"):
                out[key] = set_from_json(val).to_json()
            elif key in ("seminorm", "dominating"):
                out[key] = seminorms.seminorm_to_json(seminorms.seminorm_from_json(val))
            elif key == "family":
                out[key] = [seminorms.seminorm_to_json(p) for p in seminorms.family_from_json(val)]
            elif key == "lambda":
                out[key] = [bh_json(bh_from_json(v)) for v in (val if isinstance(val, list) else [val])]
            elif key == "probes":
                out[key] = [HVector.from_json(v).to_json() for v in val]
            elif key in ("dim", "truncation"):
                out[key] = int(val)
            else:
                raise BadInstance(f"unknown instance key {key!r}")
    except BadInstance:
        raise
    except (BihypError, ValueError, TypeError, KeyError) as err:
        raise BadInstance(f"malformed instance: {err}") from err
    return out


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _need(inst, key):
    if key not in inst:
        raise BadInstance(f"instance needs a {key!r} entry")
    return inst[key]


def _set(inst):
    return set_from_json(_need(inst, "set"))


def _product(inst):
    S = _set(inst)
    if not isinstance(S, Product):
        raise BadInstance("this property needs a product set")
    return S


def _seminorm(inst):
    return seminorms.seminorm_from_json(_need(inst, "seminorm"))


def _family(inst):
    return seminorms.family_from_json(_need(inst, "family"))


def _dim(inst, default=None):
    if "dim" in inst:
        return inst["dim"]
    if "seminorm" in inst:
        return seminorms._dim_of(_seminorm(inst))
    if "family" in inst:
        return seminorms._dim_of(_family(inst)[0])
    return default or 1


def _metric(inst):
    return H2Metric(tuple(_family(inst)), inst.get("truncation", metric.DEFAULT_TRUNCATION), _dim(inst))


def _unit_set(p, dim, strict):
    if isinstance(p, seminorms.GaugeSeminorm):
        return gauge.unit_sets(p.S, strict)
    return LambdaPredicate("seminorm_ball", dim, seminorms=[p], radius=1.0, strict=strict)


def _sup_members(inst):
    F = _family(inst)
    return [seminorms.sup_family(F, m) for m in range(1, len(F) + 1)]


def _dominating(inst):
    if "dominating" in inst:
        return seminorms.seminorm_from_json(inst["dominating"])
    return CanonicalNorm(("p2",) * 4)


# subject name -> builder; reverify rebuilds the checked object from the instance
_SUBJECTS: dict[str, Callable] = {
    "set": _set,
    "seminorm": _seminorm,
    "family": _family,
    "metric": _metric,
    "gauge": lambda inst: seminorms.GaugeSeminorm(_product(inst)),
    "unit_open": lambda inst: _unit_set(_seminorm(inst), _dim(inst), True),
    "unit_closed": lambda inst: _unit_set(_seminorm(inst), _dim(inst), False),
    "sup_members": _sup_members,
    "neighborhood": lambda inst: metric.Neighborhood(HVector.zeros(_dim(inst)), 1.0, _family(inst)).as_set(),
}


def _recheck(subject: str, inst: dict, check: str, witness: dict) -> bool:
    if subject.startswith("sup_") and subject[4:].isdigit():
        m = int(subject.split("_")[1])
        return seminorms.recheck(seminorms.sup_family(_family(inst), m), witness)
    if check == "continuity":
        return metric.recheck_continuity(_seminorm(inst), _dominating(inst), _metric_for(inst), witness)
    obj = _SUBJECTS[subject](inst)
    if check in ("sandwich", "gauge_definite"):
        return gauge.recheck(obj, witness)
    if check == "bounded":
        w = checks.decode(witness)
        U = metric.Neighborhood(HVector.zeros(obj.dim), 1.0, [CanonicalNorm(("p2",) * 4)]).scaled(w["lam"])
        return obj.contains(w["x"]) and not metric.neighborhood_contains(U, w["x"])
    if isinstance(obj, H2Metric):
        return metric.recheck(obj, witness)
    if isinstance(obj, (Product, LambdaPredicate)):
        return checks.recheck(obj, witness)
    return seminorms.recheck(obj, witness)


# -- property runners ---------------------------------------------------------------------
# each returns a list of (subject, CheckReport)


def _t1(inst, trials, seed, tol):
    S = _product(inst)
    if "lambda" in inst:
        lams = [bh_from_json(v) for v in inst["lambda"]]
    else:
        lams = [
            Bihyperbolic(1, -1, 1, -1),
            Bihyperbolic(1, 1, -1, -1),
            Bihyperbolic(-1, -1, -1, -1),
            Bihyperbolic(-1, 1, 1, 1),
            Bihyperbolic(0, 0, 0, 0),
            Bihyperbolic(2.5, 0.5, 1.5, 3.0),
            Bihyperbolic(-2.0, 0.25, 3.0, -0.75),
        ]
    out = []
    for lam in lams:
        if modulus(lam) == Bihyperbolic(1.0):
            out.append(("set", checks.check_unit_scaling(S, lam, trials, seed)))
        elif not is_zero_divisor(lam):
            out.append(("set", checks.check_modulus_scaling(S, lam, trials, seed)))
        else:
            raise BadInstance(f"lambda {lam!r} is a zero divisor; neither clause applies")
    return out


def _t2(inst, trials, seed, tol):
    S = _set(inst)
    return [
        ("set", checks.check_balanced(S, trials, seed, certify=False)),
        ("set", checks.check_idempotent_stability(S, trials, seed)),
        ("set", checks.check_slice_balanced(S, trials, seed)),
    ]


def _t4(inst, trials, seed, tol):
    return [("set", checks.check_decomposition(_set(inst), trials, seed))]


def _t5(inst, trials, seed, tol):
    return [("set", checks.check_h2_convex(_set(inst), trials, seed, certify=False))]


def _t8(inst, trials, seed, tol):
    S = _product(inst)
    out = []
    for r in (2, 3):
        for idx in _combinations(r):
            out.append(("set", checks.minkowski_sum_subset_check(S, idx, trials, seed)))
    return out


def _combinations(r):
    import itertools

    return [list(c) for c in itertools.combinations(range(1, 5), r)]


def _t12(inst, trials, seed, tol):
    p, dim = _seminorm(inst), _dim(inst)
    return [
        ("seminorm", seminorms.check_seminorm_axioms(p, trials, seed, tol, dim)),
        ("seminorm", seminorms.kernel_check(p, trials, seed, dim=dim)),
    ]


def _t14(inst, trials, seed, tol):
    dim = _dim(inst)
    probes = checks.default_probes(dim, 16, seed)
    out = []
    for subject in ("unit_open", "unit_closed"):
        U = _SUBJECTS[subject](inst)
        out.append((subject, checks.check_h2_convex(U, trials, seed)))
        out.append((subject, checks.check_balanced(U, trials, seed)))
        out.append((subject, checks.check_absorbing(U, probes, 64, seed)))
    return out


def _t15(inst, trials, seed, tol):
    S = _product(inst)
    q = seminorms.GaugeSeminorm(S)
    probes = checks.default_probes(S.dim, 16, seed)
    return [
        ("set", checks.check_h2_convex(S, trials, seed)),
        ("set", checks.check_balanced(S, trials, seed)),
        ("set", checks.check_absorbing(S, probes, 64, seed)),
        ("gauge", seminorms.check_seminorm_axioms(q, trials, seed, tol, S.dim)),
    ]


def _sandwich(inst, trials, seed, tol):
    return [("set", gauge.check_sandwich(_product(inst), trials, seed))]


def _corollary(inst, trials, seed, tol):
    S = _product(inst)
    U = metric.Neighborhood(HVector.zeros(S.dim), 1.0, [CanonicalNorm(("p2",) * 4)])
    return [
        ("set", metric.bounded_check(S, U, seed=seed)),
        ("set", gauge.check_gauge_definite(S, trials, seed)),
    ]


def _sup_lemma(inst, trials, seed, tol):
    F, dim = _family(inst), _dim(inst)
    out = [("family", seminorms.check_sup_monotone(F, trials, seed, dim))]
    for m in range(1, len(F) + 1):
        q = seminorms.sup_family(F, m)
        out.append((f"sup_{m}", seminorms.check_seminorm_axioms(q, trials, seed, tol, dim)))
    base = seminorms.is_separated(F, (), trials, seed, dim=dim)
    if base.passed:
        inherited = seminorms.is_separated(_sup_members(inst), (), trials, seed, dim=dim)
        inherited.details["family_separated"] = True
        out.append(("sup_members", inherited))
    else:
        out.append(("sup_members", CheckReport("separated", Verdict.CERTIFIED, 0, seed,
                                               details={"family_separated": False, "reason": "vacuous"})))
    return out


def _metric_axioms(inst, trials, seed, tol):
    M = _metric(inst)
    probes = inst.get("probes", [])
    return [("metric", metric.check_metric_axioms(M, trials, seed, tol, probes))]


def _neighborhood(inst, trials, seed, tol):
    U = _SUBJECTS["neighborhood"](inst)
    return [
        ("neighborhood", checks.check_h2_convex(U, trials, seed)),
        ("neighborhood", checks.check_balanced(U, trials, seed)),
    ]


def _metric_for(inst):
    return H2Metric((_dominating(inst),), metric.DEFAULT_TRUNCATION, _dim(inst))


def _continuity(inst, trials, seed, tol):
    p, q = _seminorm(inst), _dominating(inst)
    return [("seminorm", metric.check_sequential_continuity(p, q, _metric_for(inst), min(trials, 200), seed))]


def _not_stable(inst, trials, seed, tol):
    S = _set(inst)
    probes = checks.default_probes(S.dim, 16, seed)
    return [
        ("set", checks.check_absorbing(S, probes, 64, seed)),
        ("set", checks.check_idempotent_stability(S, trials, seed)),
    ]


@dataclass(frozen=True)
class Entry:
    id: str
    theorem: str
    statement: str
    runner: Callable
    instances: dict  # name -> (instance, expected verdict)
    default: str

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "theorem": self.theorem,
            "statement": self.statement,
            "default_instance": canonical_instance(self.instances[self.default][0]),
            "instances": {k: {"instance": canonical_instance(v[0]), "expected": v[1]} for k, v in self.instances.items()},
        }


def _entry(id, theorem, statement, runner, instances, default=None):
    return Entry(id, theorem, statement, runner, instances, default or next(iter(instances)))


REGISTRY: dict[str, Entry] = {
    e.id: e
    for e in [
        _entry("T1.scaling", "T1", "lam S = S when |lam| = 1; lam S = |lam| S when lam is 0 or invertible",
               _t1, {"unit-ball": (UNIT_BALL, PASS), "mixed": (MIXED, PASS)}),
        _entry("T2.balanced-slices", "T2", "an H2-balanced set is stable under each e_i and its slices are balanced",
               _t2, {"mixed": (MIXED, PASS), "octahedra": (OCTAHEDRA, PASS)}),
        _entry("T4.decomposition", "T4", "an H2-convex set splits as a sum of its e_i-slices",
               _t4, {"unit-ball": (UNIT_BALL, PASS), "abs-sum": (ABS_SUM, FAIL)}),
        _entry("T5.convexity", "T5", "a sum of real convex slices is H2-convex",
               _t5, {"mixed": (MIXED, PASS), "octahedra": (OCTAHEDRA, PASS)}),
        _entry("T5-convexity-fail", "T5", "a set failing the slice decomposition is not H2-convex",
               _t5, {"abs-sum": (ABS_SUM, FAIL)}),
        _entry("T8.minkowski-sum", "T8", "e_i S + e_j S (+ e_k S) stays in S for an H2-convex S containing 0",
               _t8, {"unit-ball": (UNIT_BALL, PASS), "mixed": (MIXED, PASS)}),
        _entry("T12.seminorm", "T12", "p(0) = 0, p is nonnegative, |p(x) - p(y)| ⪯ p(x - y), the kernel is a submodule",
               _t12, {
                   "euclidean": ({"seminorm": _EUCLID, "dim": 2}, PASS),
                   "coordinate": ({"seminorm": _FIRST, "dim": 2}, PASS),
                   "gauge": ({"seminorm": {"gauge": {"set": MIXED}}}, PASS),
               }),
        _entry("T14.unit-sets", "T14", "{p < 1} and {p ⪯ 1} are H2-convex, H2-balanced and H2-absorbing",
               _t14, {
                   "euclidean": ({"seminorm": _EUCLID, "dim": 2}, PASS),
                   "coordinate": ({"seminorm": _FIRST, "dim": 2}, PASS),
                   "gauge": ({"seminorm": {"gauge": {"set": MIXED}}}, PASS),
               }),
        _entry("T15.gauge-seminorm", "T15", "the gauge of a convex, balanced, absorbing set is an H2-seminorm",
               _t15, {"unit-ball": (UNIT_BALL, PASS), "mixed": (MIXED, PASS), "octahedra": (OCTAHEDRA, PASS)}),
        _entry("Sandwich", "Sandwich", "{q < 1} ⊂ S ⊂ {q ⪯ 1}, with equality on the closed or open side",
               _sandwich, {"closed-ball": (UNIT_BALL, PASS), "open-ball": (OPEN_UNIT_BALL, PASS), "mixed": (MIXED, PASS)}),
        _entry("Cor.gauge-norm", "Corollary", "the gauge of a bounded set vanishes only at 0",
               _corollary, {"unit-ball": (UNIT_BALL, PASS), "mixed": (MIXED, PASS)}),
        _entry("SupLemma", "SupLemma", "q_m = sup(p_1..p_m) are seminorms, q_m ⪯ q_(m+1), separation is inherited",
               _sup_lemma, {
                   "split": ({"family": [_FIRST, _REST, _EUCLID], "dim": 2}, PASS),
                   "norms": ({"family": [_EUCLID, _MIXED_NORM], "dim": 1}, PASS),
               }),
        _entry("M.metric-axioms", "Metric", "sum 2^-n p_n/(1 + p_n) is a translation invariant H2-metric",
               _metric_axioms, {
                   "euclidean": ({"family": [_EUCLID], "dim": 2}, PASS),
                   "split": ({"family": [_FIRST, _REST], "dim": 2}, PASS),
               }),
        _entry("LC.neighborhood-convex", "Metric", "seminorm neighbourhoods of 0 are H2-convex and H2-balanced",
               _neighborhood, {"split": ({"family": [_FIRST, _REST], "dim": 2}, PASS)}),
        _entry("Cont.seminorm", "Continuity", "a seminorm dominated by a continuous one is sequentially continuous",
               _continuity, {
                   "coordinate": ({"seminorm": _FIRST, "dim": 2}, PASS),
                   "half-gauge": ({"seminorm": {"gauge": {"set": {"product": [{"ball": {"p": 2, "r": 2.0}}] * 4, "dim": 2}}}}, PASS),
               }),
        _entry("Absorbing.ei-not-stable", "T2", "an absorbing set need not be stable under the idempotents",
               _not_stable, {"modulus-or-one": (MODULUS_OR_ONE, FAIL)}),
    ]
}


def list_registry() -> list:
    return [e.to_json() for e in REGISTRY.values()]


# -- reports ------------------------------------------------------------------------------


@dataclass
class PropertySpec:
    id: str
    instance: Optional[object] = None
    trials: int = 1000
    seed: int = 0
    tol: float = 1e-9


@dataclass
class VerifyReport:
    id: str
    theorem: str
    instance: dict
    instance_name: Optional[str]
    verdict: Verdict
    expected: Optional[str]
    checks: list  # (subject, CheckReport)
    seed: int
    trials: int
    tol: float
    wall_time: float = field(default=0.0, compare=False)

    @property
    def as_expected(self) -> Optional[bool]:
        if self.expected is None:
            return None
        return (self.verdict is Verdict.FAIL) == (self.expected == FAIL)

    def to_dict(self) -> dict:
        # wall time stays out so reports are byte-reproducible
        return {
            "id": self.id,
            "theorem": self.theorem,
            "instance": self.instance,
            "instance_name": self.instance_name,
            "verdict": self.verdict.value,
            "expected": self.expected,
            "as_expected": self.as_expected,
            "seed": self.seed,
            "trials": self.trials,
            "tol": self.tol,
            "checks": [dict(subject=s, **r.to_dict()) for s, r in self.checks],
        }

    def to_json(self) -> str:
        return _dump(self.to_dict())


def _combine(reports) -> Verdict:
    if any(r.verdict is Verdict.FAIL for r in reports):
        return Verdict.FAIL
    if all(r.verdict is Verdict.CERTIFIED for r in reports):
        return Verdict.CERTIFIED
    return Verdict.SAMPLED


def _lookup(entry: Entry, inst: dict):
    key = _dump(inst)
    for name, (reg, expected) in entry.instances.items():
        if _dump(canonical_instance(reg)) == key:
            return name, expected
    return None, None


def verify(spec: PropertySpec) -> VerifyReport:
    entry = REGISTRY.get(spec.id)
    if entry is None:
        raise UnknownProperty(spec.id)
    raw = entry.instances[entry.default][0] if spec.instance is None else spec.instance
    inst = canonical_instance(raw)
    name, expected = _lookup(entry, inst)
    start = time.perf_counter()
    try:
        results = entry.runner(inst, int(spec.trials), int(spec.seed), float(spec.tol))
    except (PreconditionFailed, BadInstance):
        raise
    except BihypError as err:
        if err.name in ("InvalidInput", "DimensionMismatch", "UnsupportedSet", "OriginNotInterior", "SamplingFailure"):
            raise BadInstance(f"{spec.id}: {err.name}: {err}") from err
        raise
    wall = time.perf_counter() - start
    verdict = _combine([r for _, r in results])
    return VerifyReport(spec.id, entry.theorem, inst, name, verdict, expected, results,
                        int(spec.seed), int(spec.trials), float(spec.tol), wall)


def reverify(report) -> bool:
    """True iff every failing check's witness still reproduces its failure."""
    d = json.loads(report) if isinstance(report, str) else report
    if isinstance(d, VerifyReport):
        d = d.to_dict()
    inst = d["instance"]
    ok = True
    for c in d["checks"]:
        if c["verdict"] != Verdict.FAIL.value:
            continue
        ok = ok and _recheck(c["subject"], inst, c["check"], c["witness"])
    return ok


# -- suites -------------------------------------------------------------------------------


def suite_specs(config: dict) -> list:
    if not isinstance(config, dict) or not config:
        raise ConfigError("empty suite config")
    if "properties" not in config:
        raise ConfigError("suite config needs a 'properties' entry")
    seed = int(config.get("seed", 0))
    trials = int(config.get("trials", 1000))
    tol = float(config.get("tol", 1e-9))
    props = config["properties"]
    specs = []
    if props == "all":
        for e in REGISTRY.values():
            for inst, _ in e.instances.values():
                specs.append(PropertySpec(e.id, inst, trials, seed, tol))
        return specs
    if not isinstance(props, list) or not props:
        raise ConfigError("'properties' must be \"all\" or a nonempty list")
    for p in props:
        if isinstance(p, str):
            p = {"id": p}
        if not isinstance(p, dict) or "id" not in p:
            raise ConfigError(f"bad property entry {p!r}")
        e = REGISTRY.get(p["id"])
        if e is None:
            raise UnknownProperty(p["id"])
        insts = [v[0] for v in e.instances.values()] if "instance" not in p else [p["instance"]]
        for inst in insts:
            specs.append(PropertySpec(p["id"], inst, int(p.get("trials", trials)), int(p.get("seed", seed)),
                                      float(p.get("tol", tol))))
    return specs


def load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigError(f"cannot read {path}: {err}") from err
    if not text.strip():
        raise ConfigError(f"{path} is empty")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise ConfigError(f"{path}: {err}") from err


def run_suite(config) -> list:
    """Run a suite given a config path or an already-loaded config dict."""
    cfg = config if isinstance(config, dict) else load_config(config)
    return [verify(s) for s in suite_specs(cfg)]


def suite_ok(reports) -> bool:
    return all(r.as_expected is not False for r in reports)
