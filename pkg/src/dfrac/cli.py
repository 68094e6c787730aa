"""Command-line interface.

Exit codes: 0 success, 1 a verified violation (or disagreement) was found,
2 usage or input error, 3 numeric error.

Ranges are written ``start..stop`` (inclusive) with an optional ``:step``,
or as comma-separated lists. Negative values may follow a flag directly,
e.g. ``--c -1..10``.
"""

from __future__ import annotations

import argparse
import csv
import random
import re
import sys
from pathlib import Path

from . import __version__
from .exceptions import HypothesisError, InputError, NumericError
from .fracops import frac_diff_comp_values, frac_diff_direct_values, frac_sum_values
from .grid import Family, FracParams, GridSeq, format_real
from .inequalities import (bernoulli_sweep, comparison_check, positivity_sweep,
                           random_admissible_instance)
from .mittag import METHODS, MlQuery, ml_eval
from .solver import (IvpSpec, max_relative_deviation, solve_closed_const, solve_oracle,
                     solve_series)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_RANGE = re.compile(r"^\s*(-?[\d.eE+-]+?)\s*\.\.\s*(-?[\d.eE+-]+?)\s*(?::\s*([\d.eE+-]+))?\s*$")


def parse_int_range(text: str) -> list[int]:
    m = _RANGE.match(text)
    if m:
        start, stop = int(m.group(1)), int(m.group(2))
        step = int(m.group(3)) if m.group(3) else 1
        if step <= 0:
            raise argparse.ArgumentTypeError("range step must be positive")
        return list(range(start, stop + 1, step))
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer or range: {text!r}") from None


def parse_float_range(text: str) -> list[float]:
    m = _RANGE.match(text)
    try:
        if m:
            start, stop = float(m.group(1)), float(m.group(2))
            step = float(m.group(3)) if m.group(3) else 1.0
            if step <= 0:
                raise argparse.ArgumentTypeError("range step must be positive")
            out, k = [], 0
            while start + k * step <= stop + 1e-9 * step:
                out.append(round(start + k * step, 12))
                k += 1
            return out
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number or range: {text!r}") from None


def _join_negative_values(argv: list[str]) -> list[str]:
    """Rewrite ``--flag -1..3`` as ``--flag=-1..3`` so argparse does not read a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and re.match(r"^-\.?\d", argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _write_csv(rows: list[list], header: list[str], out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _open_output(path: str | None):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", newline="", encoding="utf-8"), True


# -- subcommands ------------------------------------------------------------


def cmd_ml(args) -> int:
    rows = []
    for n in args.n:
        q = MlQuery(args.nu, args.beta_offset, args.c, n, args.shift)
        rows.append([format_real(q.nu), format_real(q.beta), format_real(q.c), n, q.shift,
                     format_real(ml_eval(q, method=args.method))])
    _write_csv(rows, ["nu", "beta", "c", "n", "shift", "value"], sys.stdout)
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        text = Path(args.spec).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read spec file: {exc}") from exc
    spec = IvpSpec.from_json(text)
    series = solve_series(spec).values
    oracle = solve_oracle(spec).values
    columns = [series, oracle]
    closed = None
    if spec.constant_value("y") is not None:
        closed = solve_closed_const(spec).values
        columns.append(closed)
    devs = max_relative_deviation(*columns)
    rows = [[n, format_real(series[n]), "" if closed is None else format_real(closed[n]),
             format_real(oracle[n]), format_real(devs[n])] for n in range(spec.horizon + 1)]
    out, close = _open_output(args.output)
    try:
        _write_csv(rows, ["offset", "series", "closed_form", "oracle", "max_rel_dev"], out)
    finally:
        if close:
            out.close()
    worst = max(devs)
    summary = sys.stderr if out is sys.stdout else sys.stdout
    print(f"max_rel_dev={format_real(worst)} tolerance={format_real(args.tolerance)}", file=summary)
    return EXIT_OK if worst <= args.tolerance else EXIT_VIOLATION


def cmd_bernoulli(args) -> int:
    c_rule = None
    if args.c is not None:
        c_values = list(args.c)
        c_rule = lambda nu: c_values  # noqa: E731
    sweep = positivity_sweep if args.check == "positivity" else bernoulli_sweep
    report = sweep(args.nu, c_rule, args.n_max, args.tolerance,
                   explore=args.explore_below_hypothesis, method=args.method)
    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    stem = "positivity" if args.check == "positivity" else "bernoulli"
    (outdir / f"{stem}_report.json").write_text(report.to_json(), encoding="utf-8")
    (outdir / f"{stem}_violations.csv").write_text(report.violations_csv(), encoding="utf-8")
    min_gap = "none" if report.min_gap is None else format_real(report.min_gap)
    print(f"points={report.points_checked} violations={len(report.violations)} min_gap={min_gap}")
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _seq_arg(text: str) -> list[float]:
    return [float(v) for v in text.split(",")]


def cmd_compare(args) -> int:
    if args.random:
        rng = random.Random(args.seed)
        instances = [random_admissible_instance(rng) for _ in range(args.random)]
    else:
        missing = [f for f in ("nu", "c1", "c2", "x0", "y0", "horizon") if getattr(args, f) is None]
        if missing:
            raise InputError(f"missing flags: {', '.join('--' + m.replace('_', '-') for m in missing)}")

        def expand(vals):
            return vals * args.horizon if len(vals) == 1 else vals

        instances = [dict(c1=expand(args.c1), c2=expand(args.c2), x0=args.x0, y0=args.y0,
                          nu=args.nu, horizon=args.horizon)]
    status = EXIT_OK
    rows = []
    for k, inst in enumerate(instances):
        result = comparison_check(inst["c1"], inst["c2"], inst["x0"], inst["y0"], inst["nu"],
                                  inst["horizon"], tolerance=args.tolerance)
        witness = "" if result.witness is None else str(result.witness)
        rows.append([k, format_real(inst["nu"]), inst["horizon"], format_real(result.min_diff),
                     witness, "pass" if result.passed else "fail"])
        if not result.passed:
            status = EXIT_VIOLATION
    _write_csv(rows, ["instance", "nu", "horizon", "min_diff", "first_violation", "status"],
               sys.stdout)
    return status


def cmd_fracop(args) -> int:
    if args.input in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise InputError(f"cannot read input: {exc}") from exc
    params = FracParams(args.a, args.nu)
    f = GridSeq.from_csv(text, params, Family.INTEGER)
    if args.op == "sum":
        values = frac_sum_values(f, args.nu, exact=args.exact)
    elif args.form == "direct":
        values = frac_diff_direct_values(f, args.nu, exact=args.exact)
    else:
        values = frac_diff_comp_values(f, args.nu, exact=args.exact)
    out, close = _open_output(args.output)
    try:
        _write_csv([[n, format_real(v)] for n, v in enumerate(values)], ["offset", "value"], out)
    finally:
        if close:
            out.close()
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dfrac", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ml", help="evaluate the discrete Mittag-Leffler function")
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--beta-offset", type=int, choices=(0, 1), default=0)
    p.add_argument("--c", type=float, required=True)
    p.add_argument("--n", type=parse_int_range, required=True, help="offset, list or range")
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_ml)

    p = sub.add_parser("solve", help="solve a linear IVP three ways and compare")
    p.add_argument("spec", help="IVP spec JSON file")
    p.add_argument("-o", "--output", help="trajectory CSV (default: stdout)")
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("bernoulli", help="sweep the generalized Bernoulli inequality")
    p.add_argument("--nu", type=parse_float_range, default=parse_float_range("0.05..1.0:0.05"))
    p.add_argument("--c", type=parse_float_range, default=None,
                   help="c values (default: -nu + 0.1 j, j = 0..60)")
    p.add_argument("--n-max", type=int, default=60)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--explore-below-hypothesis", action="store_true")
    p.add_argument("--check", choices=("bernoulli", "positivity"), default="bernoulli")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.add_argument("-o", "--output-dir", default=".")
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("compare", help="check the comparison theorem on IVP pairs")
    p.add_argument("--nu", type=float)
    p.add_argument("--c1", type=_seq_arg, help="constant or comma list")
    p.add_argument("--c2", type=_seq_arg)
    p.add_argument("--x0", type=float)
    p.add_argument("--y0", type=float)
    p.add_argument("--horizon", type=int)
    p.add_argument("--tolerance", type=float, default=1e-10)
    p.add_argument("--random", type=int, default=0, metavar="K",
                   help="check K random admissible instances instead")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fracop", help="apply a fractional sum or difference to a CSV sequence")
    p.add_argument("--op", choices=("sum", "diff"), required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--form", choices=("comp", "direct"), default="comp")
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--input", default="-")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_fracop)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, HypothesisError) as exc:
        print(f"dfrac {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"dfrac {args.command}: numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
