"""Legendre's approximation x / (log x - B), the mean-error choice of B, and
the arithmetic bias li(x) > pi(x)."""

from .bias import BiasReport, CrossoverReport, TrackSeries, bias_scan, crossover_report, error_tracks
from .errors import (
    AccuracyError,
    BracketingError,
    CacheError,
    DomainError,
    LegendreBiasError,
    OutOfRangeError,
    ResourceError,
)
from .legendre import (
    LEGENDRE_B,
    TABLE1_B,
    ErrorConvention,
    FitResult,
    LegendreModel,
    Target,
    average_error,
    chebyshev_difference,
    fit_li_target,
    legendre_value,
    pointwise_error,
    solve_B0,
    table1,
)
from .logint import EvalAccuracy, Li, ei, li, li_asymptotic, li_quad
from .primes import PrimeTable, build_prime_table, f_weighted_count, mobius, pi, primes_between
from .riemann import (
    ZeroTable,
    ZetaZero,
    bias_magnitude_comparison,
    f_from_pi,
    load_zeros,
    pi_from_f_inversion,
    zero_pair_term,
)

__version__ = "0.1.0"
