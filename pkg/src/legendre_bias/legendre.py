"""Legendre's x / (A log x - B) model and the choice of B by mean error.

The error at a sample prime x is

    E(x, B) = x / (log x - B) - pi(x) - 1

(the -1 because Legendre counted 1 as a prime).  ``average_error`` takes the
plain mean of E over the primes in a range; it is strictly increasing in B,
so ``solve_B0`` brackets its unique root and bisects.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import logint
from .errors import AccuracyError, BracketingError, DomainError
from .primes import PrimeTable, pi, pi_array, primes_between

LEGENDRE_B = 1.08366
TABLE1_B = (1.0700, 1.0725, 1.0750, 1.0775, 1.0800, 1.0825, 1.0850, 1.0875, 1.0900, 1.0925)

# fixed chunk size for the parallel reduction, so the summation tree never
# depends on the worker count
REDUCE_CHUNK = 1 << 14


class Target(str, enum.Enum):
    EXACT_PI = "pi"
    LI = "li"
    LI_PRINCIPAL = "Li"


@dataclass(frozen=True)
class LegendreModel:
    B: float
    A: float = 1.0

    def __post_init__(self):
        if not self.A > 0:
            raise DomainError(f"A must be positive, got {self.A}")

    @property
    def label(self) -> str:
        if self.A == 1.0:
            return f"B={self.B:.12g}"
        return f"A={self.A:.12g},B={self.B:.12g}"


@dataclass(frozen=True)
class ErrorConvention:
    """How the averaged error is formed.

    ``include_endpoint_primes`` counts the sample prime itself in pi(x);
    switching it off uses pi(x-) instead, for diagnosing convention mismatches.
    """

    unity_offset: bool = True
    range_start: int = 3
    range_end: int = 10**6
    target: Target = Target.EXACT_PI
    include_endpoint_primes: bool = True

    def __post_init__(self):
        object.__setattr__(self, "target", Target(self.target))
        if self.range_start < 2:
            raise DomainError(f"range_start must be >= 2, got {self.range_start}")
        if self.range_start > self.range_end:
            raise DomainError("range_start must not exceed range_end")


LI_CONVENTION = ErrorConvention(unity_offset=False, range_start=5, target=Target.LI)


@dataclass(frozen=True)
class FitResult:
    B0: float
    residual: float
    bracket_history: list[tuple[float, float]] = field(repr=False)
    iterations: int
    convention: ErrorConvention

    @property
    def delta(self) -> float:
        """Legendre's published constant minus the root."""
        return LEGENDRE_B - self.B0


def legendre_value(x, model: LegendreModel):
    arr = np.asarray(x, dtype=np.float64)
    denom = model.A * np.log(arr) - model.B
    if np.any(denom <= 0):
        raise DomainError(f"A log x - B must be positive (B={model.B}, A={model.A})")
    out = arr / denom
    return float(out) if out.ndim == 0 else out


def _target_values(xs: np.ndarray, conv: ErrorConvention, table: PrimeTable) -> np.ndarray:
    if conv.target is Target.EXACT_PI:
        counts = pi_array(xs, table).astype(np.float64)
        if not conv.include_endpoint_primes:
            counts -= np.isin(xs, table.primes)
        return counts
    if conv.target is Target.LI:
        return logint.li(xs)
    return logint.Li(xs)


def _offset(conv: ErrorConvention) -> float:
    return 1.0 if conv.unity_offset else 0.0


def pointwise_error(x, B: float, conv: ErrorConvention, table: PrimeTable) -> float:
    """Model value minus the target at x, minus 1 when the unity offset is on."""
    if x > table.limit:
        pi(x, table)  # raises OutOfRangeError
    xs = np.asarray([x], dtype=np.float64)
    value = legendre_value(xs, LegendreModel(B))
    return float(value[0] - _target_values(xs, conv, table)[0] - _offset(conv))


@dataclass(frozen=True, eq=False)
class _Samples:
    """Sample primes of a convention with their target-plus-offset values."""

    x: np.ndarray
    log_x: np.ndarray
    baseline: np.ndarray

    @classmethod
    def build(cls, conv: ErrorConvention, table: PrimeTable, target_fn=None) -> "_Samples":
        xs = primes_between(conv.range_start, min(conv.range_end, table.limit), table)
        if conv.range_end > table.limit:
            pi(conv.range_end, table)
        if len(xs) == 0:
            raise DomainError(f"no primes in [{conv.range_start}, {conv.range_end}]")
        x = xs.astype(np.float64)
        target = _target_values(x, conv, table) if target_fn is None else np.asarray(target_fn(x), dtype=np.float64)
        return cls(x=x, log_x=np.log(x), baseline=target + _offset(conv))

    def errors(self, B: float, lo: int = 0, hi: int | None = None) -> np.ndarray:
        return self.x[lo:hi] / (self.log_x[lo:hi] - B) - self.baseline[lo:hi]

    def mean(self, B: float, workers: int = 1, reverse: bool = False) -> float:
        if not B < self.log_x[0]:
            raise DomainError(f"B={B} must be below log of the first sample prime ({self.log_x[0]:.6f})")
        n = len(self.x)
        if workers > 1:
            bounds = [(i, min(i + REDUCE_CHUNK, n)) for i in range(0, n, REDUCE_CHUNK)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                partials = list(pool.map(lambda b: math.fsum(self.errors(B, *b)), bounds))
            return math.fsum(partials) / n
        errs = self.errors(B)
        if reverse:
            errs = errs[::-1]
        return math.fsum(errs) / n


def average_error(
    B: float,
    conv: ErrorConvention,
    table: PrimeTable,
    *,
    workers: int = 1,
    reverse: bool = False,
) -> float:
    """Mean of :func:`pointwise_error` over the primes in the convention's range.

    Summation is correctly rounded (``math.fsum``).  With ``workers > 1`` the
    range is cut into fixed chunks whose sums are combined in chunk order.
    """
    return _Samples.build(conv, table).mean(B, workers=workers, reverse=reverse)


def table1(Bs, conv: ErrorConvention, table: PrimeTable) -> list[tuple[float, float]]:
    Bs = [float(b) for b in Bs]
    if not Bs:
        return []
    samples = _Samples.build(conv, table)
    return [(b, samples.mean(b)) for b in Bs]


def _bisect(fn, lo: float, hi: float, tol: float, conv: ErrorConvention) -> FitResult:
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if lo > hi:
        raise DomainError(f"bracket is reversed: [{lo}, {hi}]")
    f_lo = fn(lo)
    if lo == hi or f_lo == 0:
        if f_lo == 0:
            return FitResult(lo, f_lo, [(lo, hi)], 0, conv)
        raise BracketingError(f"degenerate bracket at {lo} with average error {f_lo}")
    f_hi = fn(hi)
    if f_hi == 0:
        return FitResult(hi, f_hi, [(lo, hi)], 0, conv)
    if not (f_lo < 0 < f_hi):
        raise BracketingError(
            f"average error has no sign change on [{lo}, {hi}]: {f_lo:.6g}, {f_hi:.6g}"
        )
    if tol < 4 * math.ulp(max(abs(lo), abs(hi))):
        raise AccuracyError(f"tol={tol} is below the float resolution near {hi}")

    history = [(lo, hi)]
    while hi - lo >= tol:
        mid = lo + (hi - lo) / 2
        f_mid = fn(mid)
        if f_mid == 0:
            lo = hi = mid
        elif f_mid < 0:
            lo = mid
        else:
            hi = mid
        history.append((lo, hi))
    B0 = lo + (hi - lo) / 2
    return FitResult(B0, fn(B0), history, len(history) - 1, conv)


def solve_B0(
    bracket_lo: float = 1.0825,
    bracket_hi: float = 1.0850,
    tol: float = 1e-6,
    conv: ErrorConvention = ErrorConvention(),
    table: PrimeTable | None = None,
    *,
    workers: int = 1,
    target_fn=None,
) -> FitResult:
    """Bisect the average error for its unique root in ``[bracket_lo, bracket_hi]``.

    ``target_fn`` replaces the convention's target with any vectorised
    function of the sample primes.
    """
    if table is None:
        raise DomainError("a PrimeTable is required")
    samples = _Samples.build(conv, table, target_fn)
    return _bisect(lambda b: samples.mean(b, workers=workers), bracket_lo, bracket_hi, tol, conv)


def fit_li_target(
    table: PrimeTable,
    conv: ErrorConvention = LI_CONVENTION,
    bracket_lo: float = 1.09,
    bracket_hi: float = 1.12,
    tol: float = 1e-6,
    target_fn=None,
) -> FitResult:
    """Root of the average error when li(x) stands in for pi(x)."""
    if conv.target is Target.EXACT_PI and target_fn is None:
        raise DomainError("fit_li_target needs an li or Li target")
    return solve_B0(bracket_lo, bracket_hi, tol, conv, table, target_fn=target_fn)


def chebyshev_difference(x: float, table: PrimeTable) -> float:
    """x / pi(x) - log x."""
    if x < 2:
        raise DomainError(f"x must be >= 2, got {x}")
    count = pi(x, table)
    if count == 0:
        raise DomainError(f"pi({x}) = 0")
    return x / count - math.log(x)
