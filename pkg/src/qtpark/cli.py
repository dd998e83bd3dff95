"""Command-line front end: stats, enumerate, check, table.

Output on stdout is byte-identical across runs and thread counts; the
only run-dependent figure (wall time of a check) goes to stderr.  Exit
codes: 0 success, 1 a check found a counterexample, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import List, Optional, Sequence, Tuple

from . import aggregate
from .checks import DEFAULT_N, CheckSpec, run_check
from .paths import PrefFunc, enumerate_all, json_line, stats
from .schedules import insertion_order, maj, pref_closed_form, runs
from .schedules import schedule_l
from .symfunc import e_nk

ENUM_DEFAULT_MAX = 7
ENUM_HARD_MAX = 8
TABLE_MAX = 7
ENK_MAX = 8


class UsageError(Exception):
    pass


def _parse_vector(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if not text:
        raise UsageError("empty vector")
    parts = text.split(",") if "," in text else list(text)
    try:
        values = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"not a vector of integers: {text!r}")
    return values


def _fmt_perm(tau: Sequence[int]) -> str:
    if len(tau) <= 9:
        return "".join(str(v) for v in tau)
    return ",".join(str(v) for v in tau)


def _parse_nrange(text: str) -> Tuple[int, int]:
    try:
        if ".." in text:
            lo_s, hi_s = text.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad n range {text!r}; expected N or LO..HI")
    if lo < 1 or hi < lo:
        raise UsageError(f"bad n range {text!r}")
    return lo, hi


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        p = PrefFunc(_parse_vector(args.vector))
    except ValueError as e:
        raise UsageError(str(e))
    sys.stdout.write(json_line(p) + "\n")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    n = args.n
    if n < 1 or n > ENUM_HARD_MAX:
        raise UsageError(f"n must lie in 1..{ENUM_HARD_MAX}")
    if n > ENUM_DEFAULT_MAX and not args.allow_large:
        raise UsageError(
            f"n = {n} enumerates {n ** n} functions; pass --allow-large")
    diagword: Optional[Tuple[int, ...]] = None
    if args.diagword is not None:
        diagword = runs(_parse_vector(args.diagword)).tau
        if len(diagword) != n:
            raise UsageError("--diagword length must equal n")
    out = sys.stdout
    for p in enumerate_all(n, max_n=ENUM_HARD_MAX):
        s = stats(p)
        if args.parking_only and s.deviation != 0:
            continue
        if args.deviation is not None and s.deviation != args.deviation:
            continue
        if diagword is not None and s.diagword != diagword:
            continue
        if args.touch is not None and s.touch != args.touch:
            continue
        out.write(json_line(p, s) + "\n")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    lo, hi = (0, 0) if args.n is None else _parse_nrange(args.n)
    kwargs = dict(id=args.id, n_lo=lo, n_hi=hi, threads=args.threads)
    if args.tau is not None:
        kwargs["tau"] = _parse_vector(args.tau)
    if args.l is not None:
        kwargs["l"] = args.l
    if args.max is not None:
        kwargs["max_part"] = args.max
    if args.samples is not None:
        kwargs["samples"] = args.samples
    try:
        spec = CheckSpec(**kwargs)
    except ValueError as e:
        raise UsageError(str(e))
    report = run_check(spec)
    sys.stdout.write(report.json() + "\n")
    sys.stderr.write(f"wall time: {report.wall_time:.3f}s\n")
    return 0 if report.passed else 1


def _schedule_row(tau: Tuple[int, ...], l: int) -> List[str]:
    rd = runs(tau)
    w = schedule_l(tau, l)
    return [
        _fmt_perm(tau),
        str(l),
        str(maj(tau)),
        " ".join(str(v) for v in rd.rho),
        " ".join(str(w[c]) for c in insertion_order(tau, l)),
        " ".join(str(w[c]) for c in range(1, len(tau) + 1)),
        " ".join(str(w[c]) for c in tau),
    ]


def _check_table_n(n: int) -> None:
    # Raise before any output or aggregation happens; the sweep itself is a
    # generator, so a guard inside it would fire only after the header (and,
    # for polynomials, an n**n aggregation pass) already went out.
    if not 1 <= n <= TABLE_MAX:
        raise UsageError(f"tables support n in 1..{TABLE_MAX}")


def cmd_table(args: argparse.Namespace) -> int:
    writer = csv.writer(sys.stdout, lineterminator="\n")
    if args.kind == "schedules":
        if args.tau is None and args.n is None:
            raise UsageError("table schedules needs --tau or --n")
        if args.n is not None:
            _check_table_n(args.n)
        writer.writerow(["tau", "l", "maj", "rho",
                         "w_insertion", "w_by_car", "w_by_tau"])
        if args.tau is not None:
            tau = runs(_parse_vector(args.tau)).tau
            for l in range(len(runs(tau).runs)):
                writer.writerow(_schedule_row(tau, l))
        else:
            for tau, l in _tau_l_sweep(args.n):
                writer.writerow(_schedule_row(tau, l))
        return 0
    if args.kind == "polynomials":
        if args.n is None:
            raise UsageError("table polynomials needs --n")
        _check_table_n(args.n)
        writer.writerow(["tau", "l", "maj", "rho",
                         "w_insertion", "w_by_car", "w_by_tau",
                         "closed_form", "brute_force", "match"])
        table = aggregate.qt_by_diagword(args.n, threads=args.threads)
        for tau, l in _tau_l_sweep(args.n):
            closed = pref_closed_form(tau, l)
            brute = aggregate.qt_poly_from_counts(table.get((tau, l), {}))
            writer.writerow(_schedule_row(tau, l) + [
                str(closed), str(brute),
                "yes" if closed == brute else "no",
            ])
        return 0
    if args.kind == "enk":
        if args.n is None:
            raise UsageError("table enk needs --n")
        if not 1 <= args.n <= ENK_MAX:
            raise UsageError(f"table enk supports n in 1..{ENK_MAX}")
        writer.writerow(["n", "k", "expansion"])
        for k, piece in enumerate(e_nk(args.n), start=1):
            writer.writerow([str(args.n), str(k), piece.json()])
        return 0
    raise UsageError(f"unknown table kind {args.kind!r}")


def _tau_l_sweep(n: int):
    from itertools import permutations
    _check_table_n(n)
    for tau in permutations(range(1, n + 1)):
        for l in range(len(runs(tau).runs)):
            yield tau, l


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qtpark",
        description="q,t-enumeration of preference and parking functions")
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser(
        "stats", help="statistics of one preference function")
    p_stats.add_argument("vector",
                         help="comma-separated values, e.g. 1,5,1,2,1")
    p_stats.set_defaults(func=cmd_stats)

    p_enum = sub.add_parser(
        "enumerate", help="stream every function of size n as JSON lines")
    p_enum.add_argument("--n", type=int, required=True)
    p_enum.add_argument("--parking-only", action="store_true")
    p_enum.add_argument("--diagword", help="keep one diagonal word")
    p_enum.add_argument("--deviation", type=int)
    p_enum.add_argument("--touch", type=int)
    p_enum.add_argument("--threads", type=int, default=1)
    p_enum.add_argument("--allow-large", action="store_true",
                        help=f"permit n = {ENUM_HARD_MAX}")
    p_enum.set_defaults(func=cmd_enumerate)

    p_check = sub.add_parser("check", help="run one registered identity check")
    p_check.add_argument("id", help=", ".join(sorted(DEFAULT_N)))
    p_check.add_argument("--n", help="N or LO..HI")
    p_check.add_argument("--tau")
    p_check.add_argument("--l", type=int)
    p_check.add_argument("--max", type=int,
                         help="box side for randomized partitions")
    p_check.add_argument("--samples", type=int,
                         help="randomized partition count")
    p_check.add_argument("--threads", type=int, default=1)
    p_check.set_defaults(func=cmd_check)

    p_table = sub.add_parser("table", help="emit a CSV table")
    p_table.add_argument("kind", choices=["schedules", "polynomials", "enk"])
    p_table.add_argument("--tau")
    p_table.add_argument("--n", type=int)
    p_table.add_argument("--threads", type=int, default=1)
    p_table.set_defaults(func=cmd_table)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
