"""Command-line front end.

Five subcommands cover the pipeline end to end:

    expand     coefficients of y(z) (from y - y^2 = z - z^3) or of Q = (y-z)/z^2
    hankel     exact Hankel determinants s_0..s_n of Q, choice of algorithm
    transform  the iterated coefficient states and the running determinant product
    somos      the Somos-4 sequence from its recurrence
    verify     the full three-route cross-check, reported as json/csv/plain

Every rational is printed as "p/q" (or "p" when the denominator is 1); output
formats carry identical numeric content.  Exit codes: 0 success/pass,
1 verification failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import verify as verify_mod
from .hankel import BAREISS, DET_METHODS, det_sequence
from .series import format_rational, q_from_y, solve_fundamental
from .somos import somos_sequence
from .transform import SOMOS_Q_STATE, coeff_step, det_product

MAX_ORDER = 10_000
MAX_HANKEL_N = 200
MAX_STEPS = 10_000
MAX_COUNT = 10_000

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_USAGE = 2
EXIT_IO = 3

FORMATS = ("plain", "json", "csv")


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="somos-hankel",
        description="Exact Somos-4 Hankel determinant toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser):
        p.add_argument("--format", choices=FORMATS, default="plain",
                       help="output format (default: plain)")
        p.add_argument("--output", metavar="PATH",
                       help="write to this file instead of stdout")

    p = sub.add_parser("expand", help="series coefficients of y or Q")
    p.add_argument("--order", type=int, required=True,
                   help=f"truncation order, 1..{MAX_ORDER}")
    p.add_argument("--what", choices=("y", "q"), default="y",
                   help="which series to expand (default: y)")
    add_common(p)

    p = sub.add_parser("hankel", help="Hankel determinants s_0..s_n of Q")
    p.add_argument("--n", type=int, required=True,
                   help=f"largest dimension, 0..{MAX_HANKEL_N}")
    p.add_argument("--method", choices=DET_METHODS, default=BAREISS,
                   help="determinant algorithm (default: bareiss)")
    add_common(p)

    p = sub.add_parser("transform", help="iterated coefficient states")
    p.add_argument("--steps", type=int, required=True,
                   help=f"number of transformation steps, 0..{MAX_STEPS}")
    add_common(p)

    p = sub.add_parser("somos", help="Somos-4 terms from the recurrence")
    p.add_argument("--count", type=int, required=True,
                   help=f"largest index, 0..{MAX_COUNT}")
    add_common(p)

    p = sub.add_parser("verify", help="three-route cross-check and suites")
    p.add_argument("--n", type=int, required=True, help="verify s_0..s_n (n >= 3)")
    p.add_argument("--seed", type=int, default=0,
                   help="seed for the randomized suites (default: 0)")
    p.add_argument("--det-cap", type=int, default=20,
                   help="cap for the direct determinant route (default: 20)")
    add_common(p)

    return parser


def _require(cond: bool, message: str):
    if not cond:
        raise UsageError(message)


def _csv_table(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def _cmd_expand(args) -> tuple[str, int]:
    _require(1 <= args.order <= MAX_ORDER, f"--order must be in 1..{MAX_ORDER}")
    if args.what == "y":
        series = solve_fundamental(args.order)
    else:
        series = q_from_y(solve_fundamental(args.order + 2))
    values = [format_rational(c) for c in series.coeffs]
    if args.format == "json":
        text = json.dumps(
            {"command": "expand", "what": args.what, "order": args.order,
             "coefficients": values},
            indent=2,
        )
    elif args.format == "csv":
        text = _csv_table(["k", "coefficient"], list(enumerate(values)))
    else:
        text = ",".join(values)
    return text, EXIT_OK


def _cmd_hankel(args) -> tuple[str, int]:
    _require(0 <= args.n <= MAX_HANKEL_N, f"--n must be in 0..{MAX_HANKEL_N}")
    q = q_from_y(solve_fundamental(max(2 * args.n, 3)))
    results = det_sequence(q, args.n, method=args.method)
    if args.format == "json":
        text = json.dumps(
            {"command": "hankel", "n": args.n, "method": args.method,
             "rows": [
                 {"n": r.n, "determinant": format_rational(r.det), "method": r.method}
                 for r in results
             ]},
            indent=2,
        )
    elif args.format == "csv":
        text = _csv_table(
            ["n", "determinant", "method"],
            [[r.n, format_rational(r.det), r.method] for r in results],
        )
    else:
        text = ",".join(format_rational(r.det) for r in results)
    return text, EXIT_OK


def _cmd_transform(args) -> tuple[str, int]:
    _require(0 <= args.steps <= MAX_STEPS, f"--steps must be in 0..{MAX_STEPS}")
    states = [SOMOS_Q_STATE]
    failure: str | None = None
    for k in range(args.steps):
        try:
            states.append(coeff_step(states[-1]))
        except ValueError:
            failure = f"transformation undefined (a = 0) at step {k}"
            break
    rows = [
        {
            "n": s.idx,
            "a": format_rational(s.a),
            "b": format_rational(s.b),
            "d": format_rational(s.d),
            "f": format_rational(s.f),
            "product": format_rational(det_product(states, s.idx)),
        }
        for s in states
    ]
    c, e = format_rational(states[0].c), format_rational(states[0].e)
    if args.format == "json":
        text = json.dumps(
            {"command": "transform", "steps": args.steps, "c": c, "e": e,
             "rows": rows},
            indent=2,
        )
    elif args.format == "csv":
        text = _csv_table(
            ["n", "a", "b", "c", "d", "e", "f", "product"],
            [[r["n"], r["a"], r["b"], c, r["d"], e, r["f"], r["product"]]
             for r in rows],
        )
    else:
        lines = [f"c = {c}", f"e = {e}"]
        lines += [
            f"n={r['n']} a={r['a']} b={r['b']} d={r['d']} f={r['f']} "
            f"product={r['product']}"
            for r in rows
        ]
        text = "\n".join(lines)
    if failure is not None:
        print(failure, file=sys.stderr)
        return text, EXIT_VERIFY_FAIL
    return text, EXIT_OK


def _cmd_somos(args) -> tuple[str, int]:
    _require(0 <= args.count <= MAX_COUNT, f"--count must be in 0..{MAX_COUNT}")
    values = [format_rational(v) for v in somos_sequence(args.count)]
    if args.format == "json":
        text = json.dumps(
            {"command": "somos", "count": args.count, "values": values}, indent=2
        )
    elif args.format == "csv":
        text = _csv_table(["n", "value"], list(enumerate(values)))
    else:
        text = ",".join(values)
    return text, EXIT_OK


def _cmd_verify(args) -> tuple[str, int]:
    _require(args.n >= 3, "--n must be at least 3")
    _require(3 <= args.det_cap <= MAX_HANKEL_N,
             f"--det-cap must be in 3..{MAX_HANKEL_N}")
    report = verify_mod.run_somos_verification(args.n, args.seed, det_cap=args.det_cap)
    if args.format == "json":
        text = verify_mod.render_json(report)
    elif args.format == "csv":
        text = verify_mod.render_csv(report)
    else:
        text = verify_mod.render_plain(report)
    return text, EXIT_OK if report.overall else EXIT_VERIFY_FAIL


_HANDLERS = {
    "expand": _cmd_expand,
    "hankel": _cmd_hankel,
    "transform": _cmd_transform,
    "somos": _cmd_somos,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        text, code = _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.output is None:
        print(text)
    else:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {args.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    return code


def run() -> None:
    raise SystemExit(main())
