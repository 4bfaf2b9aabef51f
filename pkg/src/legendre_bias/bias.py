"""The bias li(x) > pi(x), error tracks behind the figures, and the crossover."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from . import logint
from .errors import DomainError, OutOfRangeError
from .legendre import LEGENDRE_B, ErrorConvention, LegendreModel, legendre_value
from .primes import PrimeTable, pi_array, primes_between

DENSE_UNTIL = 1000
CROSSOVER_STRIDE = 10**4
CROSSOVER_MARKS = (10**6, 3 * 10**6, 6 * 10**6, 10**7)


@dataclass(frozen=True)
class BiasReport:
    range: tuple[int, int]
    min_gap: float
    min_at: int
    violations: list[int] = field(repr=False)

    @property
    def holds(self) -> bool:
        return not self.violations


@dataclass(frozen=True, eq=False)
class TrackSeries:
    xs: np.ndarray
    tracks: dict[str, np.ndarray]

    def __post_init__(self):
        for label, values in self.tracks.items():
            if len(values) != len(self.xs):
                raise ValueError(f"track {label!r} has {len(values)} values for {len(self.xs)} points")

    def write_csv(self, fh):
        """``x,<label>,...`` header then one row per sample, full precision."""
        writer = csv.writer(fh, lineterminator="\n")
        labels = list(self.tracks)
        writer.writerow(["x", *labels])
        columns = [self.tracks[k] for k in labels]
        for i, x in enumerate(self.xs):
            writer.writerow([_fmt(x), *(repr(float(col[i])) for col in columns)])


def _fmt(x) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def bias_scan(lo: int, hi: int, table: PrimeTable) -> BiasReport:
    """li(x) - pi(x) at every prime in [lo, hi] and every integer up to 1000."""
    if not 2 <= lo < hi:
        raise DomainError(f"need 2 <= lo < hi, got lo={lo} hi={hi}")
    if hi > table.limit:
        raise OutOfRangeError(f"hi={hi} exceeds the sieve limit {table.limit}")
    dense = np.arange(lo, min(hi, DENSE_UNTIL) + 1, dtype=np.int64)
    xs = np.union1d(dense, primes_between(lo, hi, table))
    gaps = logint.li(xs.astype(np.float64)) - pi_array(xs, table)
    i = int(np.argmin(gaps))
    return BiasReport(
        range=(lo, hi),
        min_gap=float(gaps[i]),
        min_at=int(xs[i]),
        violations=[int(x) for x in xs[gaps <= 0]],
    )


def error_tracks(
    xs,
    models,
    include_li: bool = True,
    conv: ErrorConvention = ErrorConvention(),
    table: PrimeTable | None = None,
    *,
    li_fn=logint.li,
) -> TrackSeries:
    """Per-sample errors of each Legendre model, plus li(x) - pi(x) - offset.

    The li track subtracts the same unity offset as the model tracks so the
    two are compared like for like.
    """
    xs = np.asarray(xs, dtype=np.float64)
    if table is None:
        raise DomainError("a PrimeTable is required")
    offset = 1.0 if conv.unity_offset else 0.0
    counts = pi_array(xs, table).astype(np.float64) if xs.size else np.empty(0)
    tracks: dict[str, np.ndarray] = {}
    for model in models:
        if model.label in tracks:
            raise DomainError(f"duplicate model {model.label}")
        values = legendre_value(xs, model) if xs.size else np.empty(0)
        tracks[model.label] = np.asarray(values) - counts - offset
    if include_li:
        tracks["li"] = (li_fn(xs) if xs.size else np.empty(0)) - counts - offset
    return TrackSeries(xs=xs, tracks=tracks)


@dataclass(frozen=True)
class CrossoverReport:
    crossover: int | None
    window: int
    stride: int
    marks: dict[int, tuple[float, float]]
    B: float = LEGENDRE_B

    def li_wins_at(self, x: int) -> bool:
        li_err, leg_err = self.marks[x]
        return li_err < leg_err

    @property
    def noticeably_worse(self) -> bool | None:
        """li error at most half the Legendre error at the last mark (our threshold)."""
        if 10**7 not in self.marks:
            return None
        li_err, leg_err = self.marks[10**7]
        return li_err <= 0.5 * leg_err


def crossover_report(
    limit: int,
    window: int,
    table: PrimeTable,
    *,
    stride: int = CROSSOVER_STRIDE,
    B: float = LEGENDRE_B,
) -> CrossoverReport:
    """Where |li(x) - pi(x)| starts to beat |x/(log x - B) - pi(x) - 1| for good.

    Scans the grid stride, 2*stride, ..., limit and returns the first grid
    point from which li wins on ``window`` consecutive samples.
    """
    if window < 1:
        raise DomainError(f"window must be >= 1, got {window}")
    if limit > table.limit:
        raise OutOfRangeError(f"limit {limit} exceeds the sieve limit {table.limit}; re-sieve")
    grid = np.arange(stride, limit + 1, stride, dtype=np.float64)
    li_err, leg_err = _abs_errors(grid, table, B)
    wins = li_err < leg_err
    crossover = None
    run = 0
    for i, w in enumerate(wins):
        run = run + 1 if w else 0
        if run == window:
            crossover = int(grid[i - window + 1])
            break
    marks_x = np.array([m for m in CROSSOVER_MARKS if m <= limit], dtype=np.float64)
    m_li, m_leg = _abs_errors(marks_x, table, B)
    marks = {int(x): (float(a), float(b)) for x, a, b in zip(marks_x, m_li, m_leg)}
    return CrossoverReport(crossover=crossover, window=window, stride=stride, marks=marks, B=B)


def _abs_errors(xs: np.ndarray, table: PrimeTable, B: float):
    if not xs.size:
        return np.empty(0), np.empty(0)
    counts = pi_array(xs, table).astype(np.float64)
    li_err = np.abs(logint.li(xs) - counts)
    leg_err = np.abs(legendre_value(xs, LegendreModel(B)) - counts - 1)
    return li_err, leg_err
