"""``qgeo`` command line.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on parse or
usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import models
from .dsl import ParseError, parse_element, parse_scalar
from .freealg import BudgetExceeded, commutator
from .groups import (
    BoundExceeded,
    NotAGroup,
    builtin_groups,
    find_factorisations,
    fourier,
    group_from_json,
    matched_pair,
)
from .reports import export_report
from .scalars import ScalarError
from .suite import UnknownCheck, exit_code, resolve, run_suite, target_names

USAGE_ERRORS = (ParseError, UnknownCheck, models.UnknownModel, NotAGroup, BoundExceeded, ScalarError, ValueError, OSError)


def _presentation(spec):
    ts = resolve(spec)
    P = ts[0].P
    if P is None:
        raise ValueError(f"{spec} has no presentation")
    return P


def _group(spec):
    groups = builtin_groups()
    if spec in groups:
        return groups[spec]
    with open(spec, encoding="utf-8") as fh:
        return group_from_json(json.load(fh), name=spec)


def _function(G, text):
    """JSON list of values, JSON object label -> value, or comma-separated values."""
    text = text.strip()
    if text.startswith("[") or text.startswith("{"):
        data = json.loads(text)
    else:
        data = text.split(",")
    if isinstance(data, dict):
        return {G.index[k]: parse_scalar(str(v)) for k, v in data.items()}
    if len(data) != G.order:
        raise ValueError(f"{G.name} needs {G.order} values, got {len(data)}")
    return {k: parse_scalar(str(v)) for k, v in enumerate(data)}


def cmd_check(args, out):
    reports = run_suite(args.target, args.suite, args.degree)
    out.write(export_report(reports, args.format).decode())
    if args.format == "json":
        out.write("\n")
    return exit_code(reports)


def cmd_nf(args, out):
    P = _presentation(args.model)
    out.write(P.format(P.normal_form(parse_element(args.expr, P))) + "\n")
    return 0


def cmd_commutator(args, out):
    P = _presentation(args.model)
    a, b = parse_element(args.a, P), parse_element(args.b, P)
    out.write(P.format(commutator(a, b, P)) + "\n")
    return 0


def cmd_fourier(args, out):
    G = _group(args.group)
    v = fourier(G, _function(G, args.function))
    out.write(json.dumps({G.labels[i]: str(c) for i, c in sorted(v.items())}) + "\n")
    return 0


def cmd_factorise(args, out):
    G = _group(args.group)
    rows = []
    for F in find_factorisations(G, bound=args.bound):
        d = F.describe()
        mp = matched_pair(F)
        lab = G.labels
        d["left_action"] = {f"{lab[m]}|>{lab[g]}": lab[v] for (m, g), v in sorted(mp.left.items())}
        d["right_action"] = {f"{lab[m]}<|{lab[g]}": lab[v] for (m, g), v in sorted(mp.right.items())}
        rows.append(d)
    out.write(json.dumps(rows, indent=2) + "\n")
    return 0


def cmd_regime(args, out):
    r = models.regime_report(*(parse_scalar(v, []) for v in (args.m, args.M, args.hbar, args.G)))
    out.write(export_report([r.to_report()], args.format, with_time=False).decode())
    if args.format == "json":
        out.write("\n")
    return 0


def cmd_list(args, out):
    out.write("\n".join(target_names()) + "\n")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(prog="qgeo", description="Exact checks for quantum-group and braided-geometry models.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("check", help="run a check suite on a model, group, R-matrix or .dsl file")
    p.add_argument("target")
    p.add_argument("--suite", default="all", help="all or a comma-separated list of checks")
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("nf", help="normal form of an expression")
    p.add_argument("model")
    p.add_argument("expr")
    p.set_defaults(func=cmd_nf)

    p = sub.add_parser("commutator", help="normal form of ab - ba")
    p.add_argument("model")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_commutator)

    p = sub.add_parser("fourier", help="sum_g f(g) g for a function on a finite group, as JSON label -> coefficient")
    p.add_argument("group")
    p.add_argument("function")
    p.set_defaults(func=cmd_fourier)

    p = sub.add_parser("factorise", help="all exact factorisations X = G.M with their matched pairs")
    p.add_argument("group")
    p.add_argument("--bound", type=int, default=64)
    p.set_defaults(func=cmd_factorise)

    p = sub.add_parser("regime", help="compare mM with the squared Planck mass hbar/G")
    p.add_argument("--m", required=True)
    p.add_argument("--M", required=True)
    p.add_argument("--hbar", required=True)
    p.add_argument("--G", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(func=cmd_regime)

    p = sub.add_parser("list", help="list built-in targets")
    p.set_defaults(func=cmd_list)
    return ap


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args, out)
    except BudgetExceeded as e:
        print(f"qgeo: reduction budget exceeded: {e}", file=sys.stderr)
        return 1
    except USAGE_ERRORS as e:
        print(f"qgeo: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    except KeyError as e:
        print(f"qgeo: unknown name {e}", file=sys.stderr)
        return 2


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
