"""Command-line front end: ``legendre-bias <command> [options]``.

Exit codes: 0 success, 1 usage, 2 I/O, 3 numerical or bracketing failure.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import bias, legendre, primes, riemann
from .errors import (
    AccuracyError,
    BracketingError,
    CacheError,
    DomainError,
    OutOfRangeError,
    ResourceError,
)

log = logging.getLogger("legendre_bias")

CACHE_ENV = "LEGENDRE_BIAS_CACHE"
CACHE_NAME = "pi-table.txt"

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _number(text: str):
    """Integer-valued numbers like ``1e6`` become ints."""
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value.is_integer() and abs(value) < 2**53:
        return int(value)
    return value


def _float_list(text: str) -> list[float]:
    return [float(t) for t in text.replace(" ", "").split(",") if t]


def _fmt(value) -> str:
    value = float(value)
    return str(int(value)) if value.is_integer() and abs(value) < 2**53 else repr(value)


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "legendre-bias"


@dataclass(frozen=True)
class RunConfig:
    limit: int | None
    range_start: int | None
    range_end: int
    tolerance: float
    unity_offset: bool | None
    target: legendre.Target
    cache_dir: Path
    output: str
    workers: int

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(
            limit=args.limit,
            range_start=args.start,
            range_end=args.end,
            tolerance=args.tol,
            unity_offset=args.unity_offset,
            target=legendre.Target(args.target),
            cache_dir=Path(args.cache_dir) if args.cache_dir else default_cache_dir(),
            output=args.out,
            workers=args.workers,
        )

    @property
    def cache_file(self) -> Path:
        return self.cache_dir / CACHE_NAME

    def convention(self) -> legendre.ErrorConvention:
        li_like = self.target is not legendre.Target.EXACT_PI
        start = self.range_start if self.range_start is not None else (5 if li_like else 3)
        offset = self.unity_offset if self.unity_offset is not None else not li_like
        return legendre.ErrorConvention(
            unity_offset=offset, range_start=start, range_end=self.range_end, target=self.target
        )

    def table(self, needed: int) -> primes.PrimeTable:
        """A sieve covering ``needed``; an existing cache fixes the limit."""
        path = self.cache_file
        if path.exists():
            cache = primes.read_pi_cache(path)
            if self.limit is not None and self.limit > cache.limit:
                raise UsageError(
                    f"--limit {self.limit} exceeds the cached sieve limit {cache.limit}; "
                    f"re-run `sieve --limit {self.limit}`"
                )
            if needed > cache.limit:
                raise UsageError(
                    f"this run needs pi up to {needed} but the cached sieve stops at {cache.limit}; "
                    f"re-run `sieve --limit {needed}`"
                )
            log.info("re-sieving to cached limit %d from %s", cache.limit, path)
            table = primes.build_prime_table(cache.limit, stride=cache.stride, workers=self.workers)
            primes.validate_pi_cache(cache, table)
            return table
        limit = self.limit if self.limit is not None else needed
        if needed > limit:
            raise UsageError(f"this run needs pi up to {needed} but --limit is {limit}")
        log.info("no cache at %s, sieving to %d", path, limit)
        return primes.build_prime_table(limit, workers=self.workers)


@contextmanager
def _output(target: str):
    if target in (None, "-"):
        yield sys.stdout
        return
    try:
        fh = open(target, "w", newline="")
    except OSError as exc:
        raise CacheError(f"cannot write {target}: {exc}") from exc
    with fh:
        yield fh


# commands ------------------------------------------------------------------


def cmd_sieve(cfg: RunConfig, args) -> int:
    if cfg.limit is None:
        raise UsageError("sieve needs --limit")
    table = primes.build_prime_table(cfg.limit, workers=cfg.workers)
    try:
        primes.write_pi_cache(table, cfg.cache_file)
    except OSError as exc:
        raise CacheError(f"cannot write cache {cfg.cache_file}: {exc}") from exc
    with _output(cfg.output) as out:
        print(f"limit={table.limit} primes={len(table)}", file=out)
    return EXIT_OK


def cmd_table1(cfg: RunConfig, args) -> int:
    conv = cfg.convention()
    Bs = legendre.TABLE1_B if args.b_list is None else _float_list(args.b_list)
    rows = legendre.table1(Bs, conv, cfg.table(conv.range_end)) if Bs else []
    with _output(cfg.output) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["B", "average_error"])
        for b, avg in rows:
            writer.writerow([repr(b), repr(avg)])
    return EXIT_OK


def cmd_fit(cfg: RunConfig, args) -> int:
    conv = cfg.convention()
    table = cfg.table(conv.range_end)
    if conv.target is legendre.Target.EXACT_PI:
        lo = 1.0825 if args.lo is None else args.lo
        hi = 1.0850 if args.hi is None else args.hi
        result = legendre.solve_B0(lo, hi, cfg.tolerance, conv, table, workers=cfg.workers)
    else:
        lo = 1.09 if args.lo is None else args.lo
        hi = 1.12 if args.hi is None else args.hi
        result = legendre.fit_li_target(table, conv, lo, hi, cfg.tolerance)
    with _output(cfg.output) as out:
        print(f"target={conv.target.value}", file=out)
        print(f"B0={result.B0!r}", file=out)
        print(f"delta={result.delta!r}", file=out)
        print(f"residual={result.residual!r}", file=out)
        print(f"iterations={result.iterations}", file=out)
        print(f"range={conv.range_start}..{conv.range_end} unity_offset={conv.unity_offset}", file=out)
    return EXIT_OK


def cmd_bias(cfg: RunConfig, args) -> int:
    report = bias.bias_scan(args.lo_x, args.hi_x, cfg.table(args.hi_x))
    with _output(cfg.output) as out:
        print(
            f"lo={args.lo_x} hi={args.hi_x} min_gap={report.min_gap!r} "
            f"min_at={report.min_at} violations={len(report.violations)}",
            file=out,
        )
        if report.violations:
            print("violations_at=" + ",".join(map(str, report.violations[:50])), file=out)
    return EXIT_OK


def cmd_tracks(cfg: RunConfig, args) -> int:
    conv = cfg.convention()
    start = conv.range_start
    table = cfg.table(args.hi_x)
    if args.grid_stride:
        xs = list(range(max(start, args.grid_stride), args.hi_x + 1, args.grid_stride))
    else:
        xs = primes.primes_between(start, args.hi_x, table)
    Bs = [1.0, 1.0825, 1.085] if args.b_list is None else _float_list(args.b_list)
    series = bias.error_tracks(
        xs, [legendre.LegendreModel(b) for b in Bs], not args.no_li, conv, table
    )
    with _output(cfg.output) as out:
        series.write_csv(out)
    return EXIT_OK


def cmd_crossover(cfg: RunConfig, args) -> int:
    limit = cfg.limit if cfg.limit is not None else 10**7
    table = cfg.table(limit)
    report = bias.crossover_report(limit, args.window, table, stride=args.stride)
    with _output(cfg.output) as out:
        crossing = "none" if report.crossover is None else report.crossover
        print(f"crossover={crossing} window={report.window} stride={report.stride} B={report.B!r}", file=out)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["x", "li_error", "legendre_error", "winner"])
        for x, (li_err, leg_err) in report.marks.items():
            writer.writerow([x, repr(li_err), repr(leg_err), "li" if li_err < leg_err else "legendre"])
        if report.noticeably_worse is not None:
            print(f"legendre_noticeably_worse_at_1e7={report.noticeably_worse}", file=out)
    return EXIT_OK


def cmd_riemann(cfg: RunConfig, args) -> int:
    x = args.x
    with _output(cfg.output) as out:
        if args.check_inversion:
            table = cfg.table(max(2, math.floor(x)))
            value = riemann.pi_from_f_inversion_exact(x, table)
            count = primes.pi(x, table)
            if value == count:
                verdict = "exact"
            elif value == count - Fraction(1, 2):
                verdict = "half-count"
            else:
                verdict = "mismatch"
            print(f"pi={_fmt(value)} {verdict}", file=out)
            return EXIT_OK if verdict != "mismatch" else EXIT_NUMERIC
        zeros = riemann.load_zeros(args.zeros_file)
        if args.zero_sums:
            table = cfg.table(math.floor(x))
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(["zeros", "residual"])
            for k in (int(k) for k in _float_list(args.zero_sums)):
                writer.writerow([k, repr(riemann.explicit_formula_residual(x, table, zeros, k))])
            return EXIT_OK
        table = cfg.table(math.isqrt(math.floor(x)))
        rep = riemann.bias_magnitude_comparison(x, zeros, table)
        print(f"x={_fmt(x)}", file=out)
        print(f"squares_term={rep.squares_term!r}", file=out)
        print(f"squares_approx={rep.squares_approx!r}", file=out)
        print(f"rho1_term={rep.rho1_term!r}", file=out)
        print(f"rho1_amplitude={rep.rho1_amplitude!r}", file=out)
        print(f"rho1_bound={rep.rho1_bound!r}", file=out)
        print(f"squares_dominate={rep.squares_dominate}", file=out)
    return EXIT_OK


COMMANDS = {
    "sieve": cmd_sieve,
    "table1": cmd_table1,
    "fit": cmd_fit,
    "bias": cmd_bias,
    "tracks": cmd_tracks,
    "crossover": cmd_crossover,
    "riemann": cmd_riemann,
}


def build_parser() -> argparse.ArgumentParser:
    shared = _Parser(add_help=False)
    shared.add_argument("--limit", type=_number, help="sieve limit")
    shared.add_argument("--start", type=int, help="first prime in the averaging range")
    shared.add_argument("--end", type=_number, default=10**6, help="last x in the averaging range")
    shared.add_argument("--tol", type=float, default=1e-6, help="bisection tolerance")
    shared.add_argument("--cache-dir", help=f"cache directory (default ${CACHE_ENV} or ~/.cache)")
    shared.add_argument("--out", default="-", help="output file, '-' for stdout")
    shared.add_argument("--unity-offset", action=argparse.BooleanOptionalAction, default=None,
                        help="subtract 1 from the model (Legendre counted 1 as prime)")
    shared.add_argument("--target", choices=[t.value for t in legendre.Target], default="pi")
    shared.add_argument("--b-list", help="comma-separated B values")
    shared.add_argument("--zeros-file", help="zeta zero ordinates (default: bundled table)")
    shared.add_argument("--workers", type=int, default=1)
    shared.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="legendre-bias", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("sieve", parents=[shared], help="sieve and write the pi cache")
    sub.add_parser("table1", parents=[shared], help="average error for a list of B")
    p = sub.add_parser("fit", parents=[shared], help="bisect for the root B0")
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p = sub.add_parser("bias", parents=[shared], help="scan li(x) - pi(x) > 0")
    p.add_argument("--lo", dest="lo_x", type=_number, default=8)
    p.add_argument("--hi", dest="hi_x", type=_number, default=10**6)
    p = sub.add_parser("tracks", parents=[shared], help="CSV error tracks for the figures")
    p.add_argument("--hi", dest="hi_x", type=_number, default=10**6)
    p.add_argument("--grid-stride", type=int, help="uniform grid instead of primes")
    p.add_argument("--no-li", action="store_true")
    p = sub.add_parser("crossover", parents=[shared], help="where li overtakes Legendre")
    p.add_argument("--window", type=int, default=20)
    p.add_argument("--stride", type=int, default=bias.CROSSOVER_STRIDE)
    p = sub.add_parser("riemann", parents=[shared], help="explicit-formula checks")
    p.add_argument("--x", type=_number, default=10**6)
    p.add_argument("--check-inversion", action="store_true")
    p.add_argument("--zero-sums", help="comma-separated zero counts for residuals")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[args.command](cfg, args)
    except (UsageError, DomainError, OutOfRangeError, ResourceError, argparse.ArgumentTypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BracketingError, AccuracyError) as exc:
        print(f"numerical error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
