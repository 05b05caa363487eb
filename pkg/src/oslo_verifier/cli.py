"""``oslo-verifier`` command line.

Exit codes: 0 all green, 1 any red, 2 any inconclusive (and no red),
3 usage error or refusal.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Iterable

from oslo_verifier import __version__, suite
from oslo_verifier.arith import is_prime
from oslo_verifier.coin_chains import MAX_EXHAUSTIVE_N, CoinRow, MalformedRowError
from oslo_verifier.nordic import MAX_BRUTE_FORCE_N, build_optimal_square
from oslo_verifier.partner_functions import CandidateFunction
from oslo_verifier.prime_circles import MAX_ARRANGEMENT_SIZE
from oslo_verifier.report import (
    EXIT_USAGE,
    ReportWriter,
    VerificationReport,
    aggregate,
    exit_code,
    refused,
)

OUT_DIR_ENV = "OSLO_VERIFIER_OUT_DIR"

MAX_BUILD_N = 200
MAX_DIOPHANTINE_BOUND = 300
MAX_MARKING_SIDE = 200
MAX_SWEEP_P = 100_000
MAX_SWEEP_K = 10_000
MAX_PENTAGON_SEEDS = 1_000_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class RunConfig:
    command: str
    options: dict[str, Any] = field(default_factory=dict)
    seed: int = 0
    workers: int = 1
    out: Path | None = None
    fmt: str = "text"
    timing: bool = False
    refusals: list[VerificationReport] = field(default_factory=list)


def _int_range(text: str) -> list[int]:
    """``4`` or ``1-5`` (inclusive)."""
    lo, sep, hi = text.partition("-")
    try:
        values = list(range(int(lo), int(hi) + 1)) if sep else [int(lo)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer or a range a-b, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return values


def _k_spec(text: str):
    return "all" if text == "all" else _int_range(text)


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational such as 3/7, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive rational, got {text!r}")
    return value


def _prime_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("common options")
    g.add_argument("--seed", type=int, default=0, help="base seed for every randomized check (default 0)")
    g.add_argument("--workers", type=_positive_int, default=1, help="worker processes for sweeps (default 1)")
    g.add_argument("--out", type=Path, help=f"report file (default stdout, or ${OUT_DIR_ENV}/<command>.jsonl)")
    g.add_argument("--format", dest="fmt", choices=["text", "structured"], default="text")
    g.add_argument("--timing", action="store_true", help="include elapsed seconds in records")

    parser = _Parser(prog="oslo-verifier", description="Desk-scale verification of six olympiad problems.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("coins", parents=[common], help="Problem 1: coin chains",
                       description=f"Exhaustive classification of (n, k); guard n <= {MAX_EXHAUSTIVE_N}.")
    p.add_argument("--n", type=_int_range, help="n or range a-b (default 1-5, or none with --trace)")
    p.add_argument("--k", type=_k_spec, default="all", help="k, range a-b, or 'all' (default)")
    p.add_argument("--lemmas", action="store_true", help="block monotonicity and three-step progress")
    p.add_argument("--trace", nargs=2, metavar=("ROW", "K"), help="print the trajectory of ROW under K")
    p.add_argument("--golden", type=Path, help="compare the --trace trajectory with this file")

    p = sub.add_parser("partners", parents=[common], help="Problem 2: unique partners",
                       description="Exact partner sets on the grid {p/q : 1 <= p, q <= GRID}.")
    p.add_argument("--candidate", default="reciprocal", help="reciprocal | scaled:C | affine:A,B")
    p.add_argument("--x", type=_rational, help="a single point (default: every grid point)")
    p.add_argument("--x2", type=_rational, help="with --x, run the monotonicity check on x < x2")
    p.add_argument("--grid", type=_positive_int, default=20, help="grid bound (default 20)")

    p = sub.add_parser("primes", parents=[common], help="Problem 3: k-friend primes",
                       description=f"Lemma sweeps and arrangements; guard |S| <= {MAX_ARRANGEMENT_SIZE}.")
    p.add_argument("--sweep", nargs=2, type=_positive_int, metavar=("PMAX", "KMAX"))
    p.add_argument("--arrange", type=_prime_list, help="comma-separated odd primes")
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--random", dest="random_sets", type=_positive_int, metavar="COUNT",
                   help="check COUNT seeded random prime subsets")
    p.add_argument("--positive", action="store_true", help="require x >= 1 instead of x >= 0")

    p = sub.add_parser("pentagon", parents=[common], help="Problem 4: concyclicity certificates")
    p.add_argument("--seeds", type=_positive_int, default=100)
    p.add_argument("--tolerance", type=_positive_float, default=1e-6)
    p.add_argument("--attempts", type=_positive_int, default=1000)
    p.add_argument("--dump", type=Path, help="write accepted configs and residuals as JSON lines")

    p = sub.add_parser("diophantine", parents=[common], help="Problem 5: a^p = b! + p")
    p.add_argument("--bmax", type=_positive_int, default=20)
    p.add_argument("--pmax", type=_positive_int, default=19)
    p.add_argument("--lemmas", action="store_true", help="run the factorial-bound and divisibility sweeps")

    p = sub.add_parser("nordic", parents=[common], help="Problem 6: Nordic squares",
                       description=f"Guards: --oracle n <= {MAX_BRUTE_FORCE_N}, --build n <= {MAX_BUILD_N}.")
    p.add_argument("--build", type=_positive_int, metavar="N")
    p.add_argument("--count", type=Path, metavar="FILE", help="whitespace-separated grid file")
    p.add_argument("--oracle", type=_positive_int, metavar="N", help="brute-force minimum")
    p.add_argument("--validate", nargs=2, type=_positive_int, metavar=("MMAX", "NMAX"))
    p.add_argument("--show-marking", nargs=2, type=_positive_int, metavar=("M", "N"))

    sub.add_parser("all", parents=[common], help="run the full default suite")
    return parser


def parse_args(argv: Iterable[str]) -> RunConfig:
    args = build_parser().parse_args(list(argv))
    if args.command is None:
        raise UsageError("oslo-verifier: a subcommand is required (see --help)")
    opts = {k: v for k, v in vars(args).items() if k not in {"command", "seed", "workers", "out", "fmt", "timing"}}
    config = RunConfig(args.command, opts, args.seed, args.workers, args.out, args.fmt, args.timing)
    _VALIDATORS.get(args.command, lambda c: None)(config)
    return config


def _refuse(config: RunConfig, claim_id: str, guard: str, **params) -> None:
    config.refusals.append(refused(claim_id, guard, **params))


def _validate_coins(c: RunConfig) -> None:
    o = c.options
    if o["n"] is None:
        o["n"] = [] if o["trace"] is not None else _int_range("1-5")
    too_big = [n for n in o["n"] if n > MAX_EXHAUSTIVE_N]
    if any(n < 1 for n in o["n"]):
        raise UsageError("--n: values must be positive")
    if too_big:
        _refuse(c, "p1.answer_set", f"C(2n,n) exhaustive enumeration bound n <= {MAX_EXHAUSTIVE_N}", n=max(too_big))
    if o["golden"] is not None and o["trace"] is None:
        raise UsageError("--golden requires --trace")
    if o["golden"] is not None and not os.access(o["golden"], os.R_OK):
        raise UsageError(f"--golden: cannot read {o['golden']}")
    if o["trace"] is not None:
        row, k = o["trace"]
        try:
            parsed = CoinRow.from_string(row)
            k = int(k)
        except (MalformedRowError, ValueError) as exc:
            raise UsageError(f"--trace: {exc}") from None
        if not 1 <= k <= parsed.length:
            raise UsageError(f"--trace: k must lie in [1, {parsed.length}]")
        if parsed.n > MAX_EXHAUSTIVE_N:
            _refuse(c, "p1.trace", f"state-space bound n <= {MAX_EXHAUSTIVE_N}", n=parsed.n)
        o["trace"] = (str(parsed), k)


def _validate_partners(c: RunConfig) -> None:
    try:
        CandidateFunction.parse(c.options["candidate"])
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"--candidate: {exc}") from None
    if c.options["x2"] is not None and (c.options["x"] is None or not c.options["x"] < c.options["x2"]):
        raise UsageError("--x2 requires --x with x < x2")
    if c.options["grid"] > 200:
        _refuse(c, "p2.grid_partners", "grid bound <= 200 (quadratic pair count)", grid=c.options["grid"])


def _validate_primes(c: RunConfig) -> None:
    o = c.options
    if o["arrange"] is not None:
        primes = o["arrange"]
        bad = [p for p in primes if p % 2 == 0 or not is_prime(p)]
        if bad:
            raise UsageError(f"--arrange: not odd primes: {bad}")
        if len(set(primes)) < 3:
            raise UsageError("--arrange: need at least three distinct primes")
        if len(set(primes)) > MAX_ARRANGEMENT_SIZE:
            _refuse(c, "p3.arrangements", f"Hamiltonian-cycle backtracking bound |S| <= {MAX_ARRANGEMENT_SIZE}",
                    size=len(set(primes)))
    if o["sweep"] is not None and (o["sweep"][0] > MAX_SWEEP_P or o["sweep"][1] > MAX_SWEEP_K):
        _refuse(c, "p3.friend_lemmas", f"sweep bound pmax <= {MAX_SWEEP_P}, kmax <= {MAX_SWEEP_K}",
                pmax=o["sweep"][0], kmax=o["sweep"][1])
    if o["sweep"] is None and o["arrange"] is None and not o["random_sets"]:
        o["sweep"] = (2000, 200)
        o["arrange"] = (3, 7, 19)


def _validate_pentagon(c: RunConfig) -> None:
    if c.options["seeds"] > MAX_PENTAGON_SEEDS:
        _refuse(c, "p4.certification", f"seed count <= {MAX_PENTAGON_SEEDS}", seeds=c.options["seeds"])


def _validate_diophantine(c: RunConfig) -> None:
    o = c.options
    if o["bmax"] > MAX_DIOPHANTINE_BOUND or o["pmax"] > MAX_DIOPHANTINE_BOUND:
        _refuse(c, "p5.search", f"desk bound bmax, pmax <= {MAX_DIOPHANTINE_BOUND}", bmax=o["bmax"], pmax=o["pmax"])


def _validate_nordic(c: RunConfig) -> None:
    o = c.options
    if o["oracle"] is not None and o["oracle"] > MAX_BRUTE_FORCE_N:
        _refuse(c, "p6.brute_force", f"(n^2)! enumeration bound n <= {MAX_BRUTE_FORCE_N}", n=o["oracle"])
    if o["build"] is not None and o["build"] > MAX_BUILD_N:
        _refuse(c, "p6.construction", f"construction bound n <= {MAX_BUILD_N}", n=o["build"])
    if o["count"] is not None and not os.access(o["count"], os.R_OK):
        raise UsageError(f"--count: cannot read {o['count']}")
    for flag in ("validate", "show_marking"):
        if o[flag] is not None and max(o[flag]) > MAX_MARKING_SIDE:
            _refuse(c, "p6.marking_sweep", f"board side <= {MAX_MARKING_SIDE}", side=max(o[flag]))
    if all(o[f] is None for f in ("build", "count", "oracle", "validate", "show_marking")):
        raise UsageError("nordic: give at least one of --build, --count, --oracle, --validate, --show-marking")


_VALIDATORS: dict[str, Callable[[RunConfig], None]] = {
    "coins": _validate_coins,
    "partners": _validate_partners,
    "primes": _validate_primes,
    "pentagon": _validate_pentagon,
    "diophantine": _validate_diophantine,
    "nordic": _validate_nordic,
}


def _reports(config: RunConfig):
    o = config.options
    if config.command == "coins":
        return suite.coins_reports(o["n"], o["k"], o["lemmas"], o["trace"], o["golden"], config.workers)
    if config.command == "partners":
        return suite.partners_reports(o["candidate"], o["x"], o["x2"], o["grid"])
    if config.command == "primes":
        return suite.primes_reports(o["sweep"], o["arrange"], o["k"], o["random_sets"], o["positive"],
                                    config.seed, config.workers)
    if config.command == "pentagon":
        return suite.pentagon_reports(o["seeds"], o["tolerance"], o["attempts"], o["dump"], seed=config.seed)
    if config.command == "diophantine":
        return suite.diophantine_reports(o["bmax"], o["pmax"], o["lemmas"])
    if config.command == "nordic":
        return suite.nordic_reports(o["build"], config.seed, o["count"], o["oracle"], o["validate"], o["show_marking"])
    if config.command == "all":
        return suite.full_suite(config.seed, config.workers)
    raise UsageError(f"unknown command {config.command!r}")


def _output_path(config: RunConfig) -> Path | None:
    if config.out is not None:
        return config.out
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        suffix = "jsonl" if config.fmt == "structured" else "txt"
        return Path(out_dir) / f"{config.command}.{suffix}"
    return None


def run(config: RunConfig, stdout=None, stderr=None) -> int:
    """Execute the selected checks, stream their records, return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    path = _output_path(config)
    sink = open(path, "w") if path is not None else stdout
    try:
        writer = ReportWriter([(sink, config.fmt)], timing=config.timing)
        if config.refusals:
            # guards are checked before any work starts; nothing else runs
            for r in config.refusals:
                writer(r)
        else:
            if config.command == "nordic" and config.options["build"] is not None:
                stdout.write(build_optimal_square(config.options["build"], config.seed).render() + "\n")
            for report in _reports(config):
                writer(report)
    finally:
        if path is not None:
            sink.close()
    summary = aggregate(writer.reports)
    counts = ", ".join(f"{k}={v}" for k, v in summary.counts.items() if v)
    stderr.write(f"{summary.total} checks: {counts or 'none'}\n")
    return exit_code(writer.reports)


def main(argv: Iterable[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        config = parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else 0
    try:
        return run(config)
    except OSError as exc:
        sys.stderr.write(f"oslo-verifier: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
