"""Command-line front end: ``bihyp <subcommand> ...``.

Every run prints one JSON document (or a plain-text rendering with
``--format plain``) followed by a newline.  Exit codes: 0 success, 1 domain
error (``{"error": <name>}``), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import core, verifier
from .errors import BihypError
from .gauge import h2_gauge
from .linear import HVector
from .metric import DEFAULT_TRUNCATION, H2Metric
from .seminorms import _dim_of, family_from_json, seminorm_from_json
from .sets import set_from_json

DEFAULTS = {"seed": 0, "trials": 1000, "tol": 1e-9, "truncation": DEFAULT_TRUNCATION}


class UsageError(Exception):
    pass


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load(text: str, flag: str):
    """A file path, inline JSON, or bare text (returned as a string)."""
    if os.path.isfile(text):
        try:
            with open(text, encoding="utf-8") as fh:
                return json.load(fh)
        except (OSError, json.JSONDecodeError) as err:
            raise UsageError(f"{flag}: cannot read {text}: {err}") from err
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _number(values, flag: str) -> core.Bihyperbolic:
    try:
        if len(values) == 4:
            return core.Bihyperbolic(*(float(v) for v in values))
        if len(values) == 1:
            return core.from_json(_load(values[0], flag))
    except (ValueError, BihypError) as err:
        raise UsageError(f"{flag}: {err}") from err
    raise UsageError(f"{flag}: expected one number or four coordinates, got {len(values)} values")


def _parse(fn, raw, flag):
    try:
        return fn(raw)
    except (BihypError, ValueError, TypeError, KeyError) as err:
        raise UsageError(f"{flag}: {err}") from err


def _vector(text, flag) -> HVector:
    return _parse(HVector.from_json, _load(text, flag), flag)


# -- subcommands ---------------------------------------------------------------------------


def _cmd_canon(args):
    # idempotent coordinates in, canonical form out
    b = _number(args.value, "value")
    return core.dual_json(b), core.format_canonical(b)


def _cmd_idem(args):
    vals = args.value
    if len(vals) == 4:
        try:
            b = core.Bihyperbolic.from_canonical(*(float(v) for v in vals))
        except ValueError as err:
            raise UsageError(f"value: {err}") from err
    else:
        b = _number(vals, "value")
    return core.dual_json(b), " ".join(repr(v) for v in b.lam)


def _cmd_mul(args):
    b = core.mul(_number([args.a], "a"), _number([args.b], "b"))
    return core.dual_json(b), core.format_canonical(b)


def _cmd_inv(args):
    b = core.inverse(_number(args.value, "value"))
    return core.dual_json(b), core.format_canonical(b)


def _cmd_mod(args):
    b = core.modulus(_number(args.value, "value"))
    return core.dual_json(b), core.format_canonical(b)


def _cmd_order(args):
    o = core.compare(_number([args.a], "a"), _number([args.b], "b"), args.tol if args.tol is not None else 0.0)
    return o.to_dict(), o.relation.value + (" (strict)" if o.strict else "")


def _cmd_gauge(args):
    S = _parse(set_from_json, _load(args.set, "--set"), "--set")
    x = _vector(args.point, "--point")
    r = h2_gauge(S, x)
    return r.to_json(), f"{core.format_canonical(r.value)} [{r.method.value}]"


def _cmd_seminorm(args):
    p = _parse(seminorm_from_json, _load(args.seminorm, "--seminorm"), "--seminorm")
    v = p(_vector(args.point, "--point"))
    return core.dual_json(v), core.format_canonical(v)


def _cmd_metric(args):
    F = _parse(family_from_json, _load(args.family, "--family"), "--family")
    x, y = _vector(args.x, "--x"), _vector(args.y, "--y")
    N = args.truncation if args.truncation is not None else DEFAULTS["truncation"]
    if N < 1:
        raise UsageError("--truncation: must be positive")
    M = H2Metric(tuple(F), N, x.dim if _dim_of(F[0], None) is None else None)
    d = M(x, y)
    out = core.dual_json(d)
    out["truncation"] = N
    return out, core.format_canonical(d)


def _cmd_verify(args):
    seed = args.seed_value
    if args.list:
        return {"registry": verifier.list_registry()}, "\n".join(verifier.REGISTRY), 0
    trials = args.trials if args.trials is not None else DEFAULTS["trials"]
    tol = args.tol if args.tol is not None else DEFAULTS["tol"]
    if args.config:
        cfg = verifier.load_config(args.config)
        if isinstance(cfg, dict):
            cfg.setdefault("seed", seed)
            cfg.setdefault("trials", trials)
            cfg.setdefault("tol", tol)
        reports = verifier.run_suite(cfg)
        ok = verifier.suite_ok(reports)
        out = {"ok": ok, "seed": cfg.get("seed", seed), "reports": [r.to_dict() for r in reports]}
        plain = "\n".join(f"{r.id} [{r.instance_name}] {r.verdict.value} expected={r.expected}" for r in reports)
        return out, plain, 0 if ok else 1
    if not args.id:
        raise UsageError("verify: one of --id, --list or --config is required")
    inst = None if args.instance is None else _load(args.instance, "--instance")
    rep = verifier.verify(verifier.PropertySpec(args.id, inst, trials, seed, tol))
    out = rep.to_dict()
    plain = f"{rep.id} {rep.verdict.value} expected={rep.expected} as_expected={rep.as_expected}"
    return out, plain, 1 if rep.as_expected is False else 0


# -- parser ---------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def flags(default):
        # subcommands use SUPPRESS so they do not overwrite flags given before them
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument("--seed", type=int, default=default)
        common.add_argument("--trials", type=int, default=default)
        common.add_argument("--tol", type=float, default=default)
        common.add_argument("--truncation", type=int, default=default)
        common.add_argument("--format", choices=("json", "plain"), default=default)
        return common

    common = flags(argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="bihyp", description="Bihyperbolic numbers, gauges, seminorms and metrics.",
                                parents=[flags(None)])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help, parents=[common])
        sp.set_defaults(fn=fn)
        return sp

    add("canon", _cmd_canon, "idempotent coordinates to canonical form").add_argument("value", nargs="+")
    add("idem", _cmd_idem, "canonical form to idempotent coordinates").add_argument("value", nargs="+")
    sp = add("mul", _cmd_mul, "product of two numbers")
    sp.add_argument("a")
    sp.add_argument("b")
    add("inv", _cmd_inv, "inverse of an invertible number").add_argument("value", nargs="+")
    add("mod", _cmd_mod, "modulus (componentwise absolute value)").add_argument("value", nargs="+")
    sp = add("order", _cmd_order, "compare two numbers in the partial order")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("gauge", _cmd_gauge, "gauge of a product set at a point")
    sp.add_argument("--set", required=True)
    sp.add_argument("--point", required=True)
    sp = add("seminorm-eval", _cmd_seminorm, "evaluate a seminorm descriptor")
    sp.add_argument("--seminorm", required=True)
    sp.add_argument("--point", required=True)
    sp = add("metric", _cmd_metric, "metric induced by a seminorm family")
    sp.add_argument("--family", required=True)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp = add("verify", _cmd_verify, "run registered property checks")
    sp.add_argument("--id")
    sp.add_argument("--instance")
    sp.add_argument("--config")
    sp.add_argument("--list", action="store_true")
    return p


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("BIHYP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"BIHYP_SEED: not an integer: {env!r}")
    return DEFAULTS["seed"]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or "json"
    try:
        args.seed_value = _seed(args)
        res = args.fn(args)
        out, plain = res[0], res[1]
        code = res[2] if len(res) > 2 else 0
        if isinstance(out, dict) and args.command == "verify" and "seed" not in out:
            out["seed"] = args.seed_value
    except UsageError as err:
        parser.print_usage(sys.stderr)
        print(f"bihyp: error: {err}", file=sys.stderr)
        return 2
    except BihypError as err:
        print(_dumps({"error": err.name}))
        print(f"bihyp: {err.name}: {err}", file=sys.stderr)
        return 1
    sys.stdout.write((plain if fmt == "plain" else _dumps(out)) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
