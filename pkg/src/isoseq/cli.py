"""Command line front end.

Exit status: 0 success, 1 a check failed (counterexample found), 2 usage or
input error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .checks import CHECKS, run_checks
from .config import ConfigError, FAMILIES, FamilySpec, MetricRealization, construct_family, realize
from .embed import coordinates, embeddability, f_table
from .enumeration import EnumSpec, canonical_vectors, default_jobs, enumerate_configs, sweep
from .io import _plain, config_to_json, dumps, load_input, points_to_csv, points_to_json
from .isometry import classes, isometric_sequence


class UsageError(Exception):
    pass


def _parse_number(text: str):
    text = text.strip()
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        x = float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None
    if not math.isfinite(x):
        raise UsageError(f"not a finite number: {text!r}")
    return x


def _parse_assignments(text: str) -> dict[str, str]:
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        if "=" not in part:
            raise UsageError(f"expected name=value, got {part!r}")
        k, v = part.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _config_of(obj):
    return obj.config if isinstance(obj, MetricRealization) else obj


def _jobs(args) -> int:
    env = os.environ.get("ISOSEQ_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"ISOSEQ_JOBS must be an integer, got {env!r}") from None
    return args.jobs if args.jobs else default_jobs()


def _checks(text: str | None) -> list[str]:
    if not text:
        return list(CHECKS)
    names = [c.strip() for c in text.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; known: {', '.join(CHECKS)}")
    return names


# --------------------------------------------------------------------------
# text output


def _pretty(obj, indent: int = 0) -> str:
    pad = " " * indent
    if isinstance(obj, dict):
        if not obj:
            return pad + "-"
        width = max(len(str(k)) for k in obj)
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{str(k):<{width}}")
                lines.append(_pretty(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k):<{width}}  {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if obj and all(isinstance(r, dict) for r in obj):
            cols = list(dict.fromkeys(k for r in obj for k in r))
            cells = [[_scalar(r.get(c, "")) for c in cols] for r in obj]
            widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
            head = pad + "  ".join(c.ljust(w) for c, w in zip(cols, widths))
            body = [pad + "  ".join(x.ljust(w) for x, w in zip(row, widths)) for row in cells]
            return "\n".join([head] + body)
        return "\n".join(pad + _scalar(v) for v in obj)
    return pad + _scalar(obj)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, float):
        return f"{v:.12g}"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, default=str)
    return str(v)


def _emit(args, payload) -> None:
    if args.pretty:
        print(_pretty(_plain(payload)))
    else:
        print(dumps(payload))


# --------------------------------------------------------------------------
# verbs


def cmd_seq(args) -> int:
    cfg = _config_of(load_input(args.input, args.tol))
    seq = isometric_sequence(cfg)
    if args.json or args.pretty:
        _emit(args, {"sequence": list(seq), "n": cfg.n, "colors": list(cfg.colors)})
    else:
        print(" ".join(map(str, seq)))
    return 0


def cmd_classes(args) -> int:
    cfg = _config_of(load_input(args.input, args.tol))
    if not 1 <= args.k <= cfg.n:
        raise UsageError(f"--k must lie in 1..{cfg.n}")
    out = [{"key": list(key.key), "count": len(subs), "representative": list(subs[0])}
           for key, subs in classes(cfg, args.k).items()]
    _emit(args, {"k": args.k, "a_k": len(out), "classes": out})
    return 0


def cmd_embed(args) -> int:
    obj = load_input(args.input, args.tol)
    if args.values:
        cfg = _config_of(obj)
        vals = {k: _parse_number(v) for k, v in _parse_assignments(args.values).items()}
        if args.squared:
            vals = {k: _sqrt(v) for k, v in vals.items()}
        real = realize(cfg, vals)
    elif isinstance(obj, MetricRealization):
        real = obj
    else:
        real = realize(obj)
    rep = embeddability(real, args.tol)
    payload = rep.to_json()
    payload["values"] = dict(real.value_map)
    if args.coords:
        if not rep.is_euclidean:
            raise UsageError("--coords needs a Euclidean input")
        pts = coordinates(real, args.tol)
        if args.coords == "csv":
            sys.stdout.write(points_to_csv(pts))
            return 0
        payload["coordinates"] = points_to_json(pts)
    _emit(args, payload)
    return 0


def _sqrt(v):
    if isinstance(v, Fraction):
        num, den = math.isqrt(v.numerator), math.isqrt(v.denominator)
        if v >= 0 and num * num == v.numerator and den * den == v.denominator:
            return Fraction(num, den)
    if v < 0:
        raise UsageError("squared distances must be nonnegative")
    return math.sqrt(v)


def _family_params(items: list[str]) -> dict:
    params: dict = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        if k == "edges":
            try:
                params[k] = [tuple(int(x) for x in e.split("-")) for e in v.split(",") if e]
            except ValueError:
                raise UsageError("edges are written like 0-1,1-2") from None
        else:
            try:
                params[k] = int(v)
            except ValueError:
                raise UsageError(f"parameter {k} must be an integer") from None
    return params


def cmd_construct(args) -> int:
    cfg = construct_family(FamilySpec(args.family, _family_params(args.params)))
    payload = config_to_json(cfg)
    if args.realize:
        payload["values"] = dict(realize(cfg).value_map)
    _emit(args, payload)
    return 0


def cmd_enumerate(args) -> int:
    spec = EnumSpec(args.n, args.colors, args.exact)
    if args.count:
        total = sum(1 for v in canonical_vectors(spec.n, spec.max_colors)
                    if spec.exact_colors is None or 1 + max(v) == spec.exact_colors)
        _emit(args, {"n": spec.n, "max_colors": spec.max_colors,
                     "exact_colors": spec.exact_colors, "total": total})
        return 0
    configs = [config_to_json(c) for c in enumerate_configs(spec)]
    _emit(args, {"n": spec.n, "max_colors": spec.max_colors, "exact_colors": spec.exact_colors,
                 "total": len(configs), "configs": configs})
    return 0


def cmd_verify(args) -> int:
    checks = _checks(args.checks)
    if args.input:
        cfg = _config_of(load_input(args.input, args.tol))
        res = run_checks(cfg, checks)
        payload = {name: {"status": o.status, "tag": o.tag, "details": o.details}
                   for name, o in res.items()}
        _emit(args, payload)
        return 1 if any(o.status == "failed" for o in res.values()) else 0
    if args.n is None or args.colors is None:
        raise UsageError("verify needs either an input file or --n and --colors")
    report = sweep(EnumSpec(args.n, args.colors, args.exact), checks, jobs=_jobs(args))
    _emit(args, report.to_json())
    return 0 if report.ok else 1


def cmd_ftable(args) -> int:
    entry = f_table(args.m, args.t)
    payload = entry.to_json()
    if not args.witness:
        payload.pop("witness")
    _emit(args, payload)
    return 0 if entry.ok else 1


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="aligned text instead of JSON")
    common.add_argument("--tol", type=float, default=1e-9,
                        help="relative tolerance for distance grouping and eigenvalues (default 1e-9)")

    ap = argparse.ArgumentParser(prog="isoseq", description="Isometric sequences of finite metric spaces.")
    sub = ap.add_subparsers(dest="verb", required=True, metavar="VERB")

    inp = "configuration JSON, realization JSON, point set JSON ({\"points\": ...}) or CSV distance matrix"
    p = sub.add_parser("seq", parents=[common], help="isometric sequence (a_1 .. a_n)")
    p.add_argument("input", help=inp)
    p.add_argument("--json", action="store_true", help="emit JSON instead of plain numbers")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("classes", parents=[common], help="isometry classes of k-subsets")
    p.add_argument("input", help=inp)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("embed", parents=[common], help="Euclidean embeddability and m_X")
    p.add_argument("input", help=inp)
    p.add_argument("--values", help="distances per colour, e.g. a=2,b=1")
    p.add_argument("--squared", action="store_true", help="--values are squared distances")
    p.add_argument("--coords", nargs="?", const="json", choices=("json", "csv"),
                   help="also output coordinates (JSON by default, or bare CSV)")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("construct", parents=[common], help="configuration of a named family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("params", nargs="*", help="name=value parameters, e.g. p=2 q=1; edges=0-1,1-2")
    p.add_argument("--realize", action="store_true", help="attach the default distance values")
    p.set_defaults(func=cmd_construct)

    def sweep_args(p):
        p.add_argument("--n", type=int)
        p.add_argument("--colors", type=int, help="maximum number of colours")
        p.add_argument("--exact", type=int, help="exact number of colours")
        p.add_argument("--jobs", type=int, default=0,
                       help="worker processes (default: all CPUs; ISOSEQ_JOBS overrides)")

    p = sub.add_parser("enumerate", parents=[common], help="all configurations up to isomorphism")
    sweep_args(p)
    p.add_argument("--count", action="store_true", help="only report the number of configurations")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify", parents=[common], help="run lemma and theorem checks")
    p.add_argument("input", nargs="?", help="check a single configuration instead of sweeping")
    sweep_args(p)
    p.add_argument("--checks", help=f"comma separated subset of: {', '.join(CHECKS)} (default all)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ftable", parents=[common], help="witness for F_m(3, t)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--witness", action="store_true", help="include the witness coordinates")
    p.set_defaults(func=cmd_ftable)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.verb == "enumerate" and (args.n is None or args.colors is None):
        ap.error("enumerate needs --n and --colors")
    if args.tol <= 0:
        ap.error("--tol must be positive")
    try:
        return args.func(args)
    except (UsageError, ConfigError) as exc:
        print(f"isoseq: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
