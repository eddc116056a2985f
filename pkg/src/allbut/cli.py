"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Sequence

import numpy as np

from allbut.boundary import EmptyFesError, NoCycleError, detect_period, tighten_length, tighten_preperiod
from allbut.fes import fes_grundy_prefix
from allbut.model import InvalidFesSet, ResourceCapError, parse_fes, set_pile_cap
from allbut.naive import grundy_prefix
from allbut.oracle import brute_min_period, default_search_bound
from allbut.sweep import FAMILIES, rows_to_csv, rows_to_json, run_conjecture, run_sweep, write_rows
from allbut.verifiers import SUITES, Status, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_grundy(args) -> int:
    x = parse_fes(args.x)
    if args.engine == "fes":
        seq = fes_grundy_prefix(x, args.n)
    else:
        seq = grundy_prefix(x, args.n)
        if args.engine == "both":
            other = fes_grundy_prefix(x, args.n)
            if seq != other:
                n = int(np.flatnonzero(seq.values != other.values)[0])
                raise AssertionError(f"engines disagree at pile {n}: naive {seq[n]} vs fes {other[n]}")
    values = seq.tolist()
    if args.format == "json":
        text = json.dumps({"x": list(x.elements), "engine": args.engine, "values": values}) + "\n"
    elif args.format == "csv":
        text = "n,g\n" + "".join(f"{n},{v}\n" for n, v in enumerate(values))
    else:
        text = " ".join(map(str, values)) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_period(args) -> int:
    x = parse_fes(args.x)
    report = detect_period(x, args.k_limit)
    seq_len = tighten_length(report)
    bound = default_search_bound(x)
    seq = grundy_prefix(x, max(seq_len, 3 * bound) - 1)
    ap = tighten_preperiod(x, report, seq)
    brute = brute_min_period(seq, bound)
    agree = brute is not None and brute.triple() == ap.triple()
    result = {
        "x": list(x.elements),
        "preperiod": ap.preperiod,
        "period": ap.period,
        "saltus": ap.saltus,
        "pure": ap.pure,
        "status": ap.status.value,
        "automaton_preperiod_bound": report.sound_preperiod,
        "oracle": list(brute.triple()) if brute else None,
        "oracle_agrees": agree,
    }
    if args.format == "json":
        text = json.dumps(result) + "\n"
    elif args.format == "csv":
        keys = list(result)
        text = ",".join(keys) + "\n" + ",".join(_csv_cell(result[k]) for k in keys) + "\n"
    else:
        text = (
            f"n0={ap.preperiod} p={ap.period} s={ap.saltus} pure={str(ap.pure).lower()} "
            f"status={ap.status.value} oracle={'agree' if agree else 'disagree'}\n"
        )
    _emit(text, args.out)
    return EXIT_OK if agree else EXIT_FAIL


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return '"' + " ".join(map(str, v)) + '"'
    return "" if v is None else str(v)


def cmd_boundary(args) -> int:
    x = parse_fes(args.x)
    _emit(detect_period(x, args.k_limit).dump(), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    bounds = {}
    if args.suite == "lemma15":
        bounds = {"a_max": args.a_max or 20, "b_max": args.b_max or 20, "k_limit": args.k_limit or 200}
    elif args.suite in ("reductions", "pure3"):
        if args.max:
            bounds = {"max_element": args.max}
    elif args.suite in ("ratio", "scaling"):
        if args.b_max or args.max:
            bounds = {"b_max": args.b_max or args.max}
    elif args.suite == "census" and args.k_limit:
        bounds = {"k_limit": args.k_limit}
    verdicts = run_suite(args.suite, jobs=args.jobs, **bounds)
    failed = [v for v in verdicts if v.status is not Status.PASS]
    if args.format == "json":
        text = json.dumps([v.to_dict() for v in verdicts], indent=1) + "\n"
    else:
        lines = [v.line() for v in (verdicts if args.verbose else failed)]
        lines.append(f"{args.suite}: {len(verdicts) - len(failed)}/{len(verdicts)} passed")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_FAIL if failed else EXIT_OK


def _sweep_bounds(args) -> dict:
    if args.family == "triples":
        bounds = {"a_min": args.a_min, "a_max": args.a_max, "b_min": args.b_min, "b_max": args.b_max}
        if args.coprime:
            bounds["coprime"] = True
        if args.min_ratio:
            bounds["min_ratio"] = args.min_ratio
        if args.rows_per_a:
            bounds["rows_per_a"] = args.rows_per_a
        return bounds
    return {"max_element": args.max}


def cmd_sweep(args) -> int:
    rows = run_sweep(args.family, jobs=args.jobs, out_path=args.out, **_sweep_bounds(args))
    fmt = "json" if args.format == "json" else "csv"
    if args.out:
        write_rows(rows, args.out, fmt)
    else:
        sys.stdout.write(rows_to_json(rows) if fmt == "json" else rows_to_csv(rows))
    impure = sum(not r.pure for r in rows)
    logging.getLogger(__name__).info("%d rows, %d not purely arithmetic periodic", len(rows), impure)
    return EXIT_OK


def cmd_conjecture(args) -> int:
    verdicts = run_conjecture(args.a_max, args.b_max, jobs=args.jobs)
    if args.format == "json":
        text = json.dumps([v.to_dict() for v in verdicts], indent=1) + "\n"
    else:
        lines = ["a,b,saltus,predicted_m,observed_n,location,tag"]
        for v in verdicts:
            m = "" if v.predicted_m is None else v.predicted_m
            n = "" if v.observed_n is None else v.observed_n
            lines.append(f"{v.a},{v.b},{v.saltus},{m},{n},{v.location},{v.tag}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="allbut", description=__doc__.splitlines()[0])
    parser.add_argument("--cap", type=int, help="hard cap on sequence lengths (overrides ALLBUT_PILE_CAP)")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmts=("text", "csv", "json")):
        p.add_argument("--format", choices=fmts, default=fmts[0])
        p.add_argument("--out", help="write to this file instead of stdout")

    p = sub.add_parser("grundy", help="print G(0..n)")
    p.add_argument("--x", required=True, help='comma-separated excluded set, "" for none')
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--engine", choices=("naive", "fes", "both"), default="naive")
    common(p)
    p.set_defaults(func=cmd_grundy)

    p = sub.add_parser("period", help="preperiod, period and saltus")
    p.add_argument("--x", required=True)
    p.add_argument("--k-limit", type=int)
    common(p)
    p.set_defaults(func=cmd_period)

    p = sub.add_parser("boundary", help="dump the boundary pattern trajectory up to its first repeat")
    p.add_argument("--x", required=True)
    p.add_argument("--k-limit", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("verify", help="run a verifier suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--a-max", type=int)
    p.add_argument("--b-max", type=int)
    p.add_argument("--max", type=int)
    p.add_argument("--k-limit", type=int)
    p.add_argument("--jobs", type=int, default=1)
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="tabulate period data over a family of excluded sets")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--a-min", type=int, default=1)
    p.add_argument("--a-max", type=int, default=8)
    p.add_argument("--b-min", type=int, default=1)
    p.add_argument("--b-max", type=int, default=50)
    p.add_argument("--coprime", action="store_true")
    p.add_argument("--min-ratio", type=int, default=0, help="keep b >= ratio * a")
    p.add_argument("--rows-per-a", type=int, help="take this many b per a instead of stopping at --b-max")
    p.add_argument("--max", type=int, default=12, help="largest element for the subset families")
    p.add_argument("--jobs", type=int, default=1)
    common(p, ("csv", "json"))
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("conjecture", help="classify saltus data for coprime b > 3a")
    p.add_argument("--a-max", type=int, default=8)
    p.add_argument("--b-max", type=int, default=60)
    p.add_argument("--jobs", type=int, default=1)
    common(p, ("text", "json"))
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        set_pile_cap(args.cap)
        return args.func(args)
    except (InvalidFesSet, EmptyFesError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceCapError, NoCycleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        set_pile_cap(None)


if __name__ == "__main__":
    sys.exit(main())
