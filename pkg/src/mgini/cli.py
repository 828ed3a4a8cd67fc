"""Command-line interface: ``mgini population | estimate | simulate``.

Exit codes: 0 ok, 1 usage, 2 unreadable data file, 3 numerical
non-convergence, 4 non-numeric data line, 5 negative value, 6 fewer values
than the order m, 7 zero-sum sample.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import tempfile
from enum import IntEnum

import numpy as np

from .errors import ConvergenceError, DomainError
from .estimator import ig_hat_fast
from .expectation import MAX_SAMPLE_SIZE, expected_estimator
from .population import parse_distribution, population_index
from .quadrature import QuadratureConfig
from .simulate import DEFAULT_SIZES, SimulationConfig, run_simulation

SIMULATION_HEADER = ("distribution", "n", "m", "bias", "mse", "se_bias", "n_sim", "seed")
DEFAULT_DISTS = ("exp:1", "gamma:2,1")
DEFAULT_SEED = 20250101


class Exit(IntEnum):
    OK = 0
    USAGE = 1
    UNREADABLE = 2
    NUMERICAL = 3
    NON_NUMERIC = 4
    NEGATIVE = 5
    TOO_FEW = 6
    ZERO_SUM = 7


class CliError(Exception):
    def __init__(self, message: str, code: Exit):
        super().__init__(message)
        self.code = code


def fmt(x) -> str:
    """Shortest decimal form with at most 10 significant digits."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return f"{float(x):.10g}"


def render(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([c if isinstance(c, str) else fmt(c) for c in row])
    return buf.getvalue()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(Exit.USAGE, f"{self.prog}: error: {message}\n")


def _order(text: str) -> int:
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"-m/--order must be an integer, got {text!r}") from None
    if m < 2:
        raise argparse.ArgumentTypeError(f"-m/--order must be >= 2, got {m}")
    return m


def _dist(text: str):
    try:
        return parse_distribution(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--sizes must be a comma list of integers, got {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError(f"--sizes must list positive integers, got {text!r}")
    return sizes


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--seed must be an integer, got {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("--seed must be a 64-bit unsigned integer")
    return value


def _rel_tol(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--rel-tol must be a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError("--rel-tol must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mgini", description="m-th Gini index: population values, estimates and simulation.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("population", help="population index IG_m of exp:RATE or gamma:SHAPE,RATE")
    p.add_argument("dist", type=_dist, metavar="DIST", help="exp:RATE or gamma:SHAPE,RATE")
    p.add_argument("-m", "--m", "--order", dest="m", type=_order, default=2)
    p.add_argument("--rel-tol", type=_rel_tol, default=QuadratureConfig.rel_tol)
    p.add_argument(
        "--verify-unbiased",
        type=int,
        metavar="N",
        help=f"also print E[IG_hat_m] at sample size N (m <= N <= {MAX_SAMPLE_SIZE})",
    )

    e = sub.add_parser("estimate", help="sample index from a file with one value per line")
    e.add_argument("path")
    e.add_argument("-m", "--m", "--order", dest="m", type=_order, default=2)

    s = sub.add_parser("simulate", help="Monte Carlo bias and MSE of the estimator")
    s.add_argument("--dist", type=_dist, action="append", help="repeatable; default: exp:1 and gamma:2,1")
    s.add_argument("-m", "--m", "--order", dest="m", type=_order, default=3)
    s.add_argument("--sizes", type=_sizes, default=DEFAULT_SIZES)
    s.add_argument("--nsim", type=_positive_int, default=1000)
    s.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    s.add_argument("--out", help="also write the CSV to this path")
    s.add_argument("--workers", type=_positive_int, default=1)
    s.add_argument("--rel-tol", type=_rel_tol, default=QuadratureConfig.rel_tol)
    return parser


def cmd_population(args) -> str:
    config = QuadratureConfig(rel_tol=args.rel_tol)
    value, method = population_index(args.dist, args.m, config)
    header = ["distribution", "m", "index", "method"]
    row = [args.dist.spec, args.m, value, method]
    if args.verify_unbiased is not None:
        n = args.verify_unbiased
        if not args.m <= n <= MAX_SAMPLE_SIZE:
            raise CliError(f"--verify-unbiased: need m <= N <= {MAX_SAMPLE_SIZE}, got {n}", Exit.USAGE)
        expected = expected_estimator(args.dist, n, args.m, config)
        header += ["n", "expected_estimator", "abs_gap"]
        row += [n, expected, abs(expected - value)]
    return render(header, [row])


def read_values(path: str) -> list[float]:
    """Parse one non-negative decimal per line; blank lines and ``#`` comments are skipped."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise CliError(f"cannot read {path}: {exc}", Exit.UNREADABLE) from None
    values = []
    for lineno, line in enumerate(lines, 1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            value = float(text)
        except ValueError:
            raise CliError(f"{path}:{lineno}: not a number: {text!r}", Exit.NON_NUMERIC) from None
        if not np.isfinite(value):
            raise CliError(f"{path}:{lineno}: not a finite number: {text!r}", Exit.NON_NUMERIC)
        if value < 0:
            raise CliError(f"{path}:{lineno}: negative value {text}", Exit.NEGATIVE)
        values.append(value)
    return values


def cmd_estimate(args) -> str:
    values = read_values(args.path)
    n = len(values)
    if n < max(args.m, 2):
        raise CliError(f"-m/--order {args.m} needs at least {max(args.m, 2)} values, {args.path} has {n}", Exit.TOO_FEW)
    if sum(values) == 0:
        raise CliError(f"{args.path}: all values are zero; the estimator is undefined", Exit.ZERO_SUM)
    return render(["n", "m", "index"], [[n, args.m, ig_hat_fast(values, args.m)]])


def simulation_rows(records):
    return [[r.dist_label, r.n, r.m, r.bias, r.mse, r.se_bias, r.n_sim, r.seed] for r in records]


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".mgini-", suffix=".csv")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cmd_simulate(args) -> str:
    dists = args.dist or [parse_distribution(d) for d in DEFAULT_DISTS]
    if min(args.sizes) < args.m:
        raise CliError(f"--sizes: every size must be >= -m/--order ({args.m}), got {min(args.sizes)}", Exit.USAGE)
    quad = QuadratureConfig(rel_tol=args.rel_tol)
    records = []
    for dist in dists:
        config = SimulationConfig(dist, sizes=args.sizes, m=args.m, n_sim=args.nsim, seed=args.seed)
        records.extend(run_simulation(config, workers=args.workers, quadrature=quad))
    for r in records:
        if r.n_rejected:
            print(f"warning: {r.dist_label} n={r.n}: {r.n_rejected} zero-sum replicate(s) rejected", file=sys.stderr)
    text = render(SIMULATION_HEADER, simulation_rows(records))
    if args.out:
        _write_atomic(args.out, text)
    return text


COMMANDS = {"population": cmd_population, "estimate": cmd_estimate, "simulate": cmd_simulate}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    try:
        sys.stdout.write(COMMANDS[args.command](args))
    except CliError as exc:
        print(f"mgini {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except ConvergenceError as exc:
        print(f"mgini {args.command}: numerical failure: {exc}", file=sys.stderr)
        return Exit.NUMERICAL
    except DomainError as exc:
        print(f"mgini {args.command}: {exc}", file=sys.stderr)
        return Exit.USAGE
    return Exit.OK


if __name__ == "__main__":
    sys.exit(main())
