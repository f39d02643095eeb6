"""Command-line interface.

Examples:
  rfaudit audit fn.json --region unit-disk --ell 1 --ell 2
  rfaudit verify --seed 0 --trials 100
  rfaudit distance --fn1 a.json --fn2 b.json --region unit-disk
  rfaudit example --m 3
  rfaudit growth --m-max 6 --csv growth.csv

Exit codes: 0 no findings, 2 doublets flagged (audit) or failed checks
(verify, distance, example), 1 error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .doublets import DEFAULT_THRESHOLD
from .errors import AuditError
from .family import example_family, growth_study
from .metrics import distances_inequality_check
from .poly import RationalFunction
from .region import parse_region
from .report import audit, dumps, render_table, to_jsonable
from .search import SearchOptions
from .verify import VERIFY_OPTIONS, run


def load_function(path: str) -> RationalFunction:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise AuditError(f"{path}: malformed JSON ({exc})") from exc
    try:
        return RationalFunction.from_json(data)
    except (KeyError, TypeError) as exc:
        raise AuditError(f"{path}: expected {{'p', 'q', 'm', 'n'}} ({exc!r})") from exc


def _options(args) -> SearchOptions:
    opts = SearchOptions()
    if args.density is not None:
        opts = replace(opts, density=args.density)
    return opts


def _emit(obj, args):
    text = render_table(obj) if args.format == "table" else dumps(obj)
    if getattr(args, "output", None):
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def cmd_audit(args) -> int:
    r = load_function(args.input)
    region = parse_region(args.region)
    rep = audit(r, region, args.ell or [1], args.threshold, _options(args))
    _emit(rep, args)
    return rep.exit_code


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise AuditError("--trials must be >= 1")
    opts = VERIFY_OPTIONS if args.density is None else replace(VERIFY_OPTIONS, density=args.density)
    summary = run(args.seed, args.trials, opts)
    out = summary.to_json()
    out["search"] = opts.to_json()
    _emit(out, args)
    return 0 if summary.all_passed else 2


def cmd_distance(args) -> int:
    r1, r2 = load_function(args.fn1), load_function(args.fn2)
    rep = distances_inequality_check(r1, r2, parse_region(args.region), _options(args))
    _emit(rep, args)
    return 0 if rep.ok else 2


def cmd_example(args) -> int:
    fam = example_family(args.m, _options(args))
    out = fam.to_json()
    _emit(out, args)
    return 0 if all(c["ok"] for c in out["checks"].values()) else 2


def cmd_growth(args) -> int:
    rows = growth_study(args.m_max, args.m_min, _options(args))
    table = [row.to_json() for row in rows]
    growth = [row.growth for row in rows]
    out = {"rows": table,
           "growth_increasing": all(b > a for a, b in zip(growth, growth[1:]))}
    if args.csv:
        enc = to_jsonable(table)
        keys = ["m", "eps1_D", "eta", "delta_norm1", "chi_D", "chi_over_delta", "in_window",
                "d", "chi_over_d", "chi_over_d_lower", "ratio_ok", "growth"]
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(keys + ["window_lo", "window_hi"])
            for row in enc:
                w.writerow([row[k] for k in keys] + row["window"])
    _emit(out, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rfaudit", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"rfaudit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--density", type=int, default=None,
                        help="grid density (default: RFA_DENSITY or 48; verify uses 12)")
    common.add_argument("--output", "-o", default=None, help="write the report to a file")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("audit", parents=[common], help="audit one rational function")
    a.add_argument("input", help='JSON {"p": ..., "q": ..., "m": m, "n": n}')
    a.add_argument("--region", default="unit-disk")
    a.add_argument("--ell", type=int, action="append",
                   help="Sylvester shift (repeatable, default 1)")
    a.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD,
                   help="chordal distance below which a zero-pole pair is flagged")
    a.set_defaults(func=cmd_audit)

    v = sub.add_parser("verify", parents=[common], help="randomized inequality suite")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--trials", type=int, default=100)
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("distance", parents=[common], help="compare two rational functions")
    d.add_argument("--fn1", required=True)
    d.add_argument("--fn2", required=True)
    d.add_argument("--region", default="unit-disk")
    d.set_defaults(func=cmd_distance)

    e = sub.add_parser("example", parents=[common], help="ill-conditioned example family")
    e.add_argument("--m", type=int, required=True)
    e.set_defaults(func=cmd_example)

    g = sub.add_parser("growth", parents=[common], help="distance growth over the family")
    g.add_argument("--m-max", type=int, required=True)
    g.add_argument("--m-min", type=int, default=1)
    g.add_argument("--csv", default=None, help="also write the table as CSV")
    g.set_defaults(func=cmd_growth)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AuditError, ValueError, OSError) as exc:
        print(f"rfaudit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
