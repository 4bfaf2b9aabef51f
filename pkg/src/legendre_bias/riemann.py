"""Riemann's f(x), its Mobius inversion back to pi(x), and zeta-zero terms.

Counting conventions: f counts prime powers with weight 1/k and half
weight at x itself; ``pi_half`` likewise counts a prime equal to x as 1/2.
Inversion therefore returns pi(x) off the primes and pi(x) - 1/2 on them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import logint
from .errors import DomainError
from .logint import DEFAULT_ACCURACY, EvalAccuracy
from .primes import PrimeTable, f_weighted_count_exact, mobius, pi

FIRST_ORDINATE = 14.134725


@dataclass(frozen=True)
class ZetaZero:
    """A zero 1/2 + i*ordinate on the critical line."""

    ordinate: float

    def __post_init__(self):
        if not self.ordinate > 0:
            raise DomainError(f"zero ordinates must be positive, got {self.ordinate}")

    @property
    def rho(self) -> complex:
        return complex(0.5, self.ordinate)


@dataclass(frozen=True)
class ZeroTable:
    zeros: tuple[ZetaZero, ...]
    source: str

    def __post_init__(self):
        if not self.zeros:
            raise DomainError("zero table is empty")
        ords = [z.ordinate for z in self.zeros]
        if any(b <= a for a, b in zip(ords, ords[1:])):
            raise DomainError("zero ordinates must be strictly ascending")
        if abs(ords[0] - FIRST_ORDINATE) > 1e-4:
            raise DomainError(f"first ordinate {ords[0]} is not the first zeta zero")

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, i):
        return self.zeros[i]


def parse_zeros(text: str, source: str = "<string>") -> ZeroTable:
    provenance = None
    ordinates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if provenance is None:
                provenance = line.lstrip("#").strip()
            continue
        try:
            value = float(line)
        except ValueError:
            raise DomainError(f"{source}:{lineno}: not a number: {line!r}") from None
        if not value > 0:
            raise DomainError(f"{source}:{lineno}: ordinate must be positive")
        if ordinates and value <= ordinates[-1]:
            raise DomainError(f"{source}:{lineno}: ordinates must be strictly ascending")
        ordinates.append(value)
    return ZeroTable(tuple(ZetaZero(v) for v in ordinates), provenance or source)


def load_zeros(path=None) -> ZeroTable:
    """Read a zeros file; without a path, the bundled first 100 zeros."""
    if path is None:
        ref = resources.files("legendre_bias") / "data" / "zeta_zeros.txt"
        return parse_zeros(ref.read_text(), "zeta_zeros.txt")
    path = Path(path)
    return parse_zeros(path.read_text(), str(path))


# f and its inversion -------------------------------------------------------


def kth_root(x: float, k: int) -> float:
    """x**(1/k), snapped to an integer when x is an exact k-th power."""
    y = x ** (1.0 / k)
    r = round(y)
    if r > 0 and float(x).is_integer() and r**k == int(x):
        return float(r)
    return y


def pi_half(x: float, table: PrimeTable) -> Fraction:
    """pi(x) with a prime equal to x counted as 1/2."""
    count = Fraction(pi(x, table))
    if float(x).is_integer() and table.is_prime(int(x)):
        count -= Fraction(1, 2)
    return count


def _max_index(x: float) -> int:
    return int(math.floor(math.log2(x))) if x >= 2 else 0


def f_from_pi_exact(x: float, table: PrimeTable) -> Fraction:
    """sum_k pi_half(x**(1/k)) / k."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    total = Fraction(0)
    for k in range(1, _max_index(x) + 1):
        total += pi_half(kth_root(x, k), table) / k
    return total


def f_from_pi(x: float, table: PrimeTable) -> float:
    return float(f_from_pi_exact(x, table))


def pi_from_f_inversion_exact(x: float, table: PrimeTable) -> Fraction:
    """sum_{n <= log2 x} mu(n)/n f(x**(1/n)); terms with x**(1/n) < 2 vanish."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    total = Fraction(0)
    for n in range(1, _max_index(x) + 1):
        mu = mobius(n)
        if mu:
            total += Fraction(mu, n) * f_weighted_count_exact(kth_root(x, n), table)
    return total


def pi_from_f_inversion(x: float, table: PrimeTable) -> float:
    return float(pi_from_f_inversion_exact(x, table))


# zero terms ----------------------------------------------------------------


def zero_pair_complex(x: float, zero: ZetaZero, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """Li(x**rho) + Li(x**(1 - rho)) as Ei(rho log x) + Ei((1 - rho) log x)."""
    if not x > 1:
        raise DomainError(f"x must be > 1, got {x}")
    L = math.log(x)
    rho = zero.rho
    return logint.ei(rho * L, acc) + logint.ei((1 - rho) * L, acc)


def zero_pair_term(x: float, zero: ZetaZero, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """Real contribution of a zero and its conjugate to f(x)."""
    return float(zero_pair_complex(x, zero, acc).real)


def zero_pair_amplitude(x: float, zero: ZetaZero, acc: EvalAccuracy = DEFAULT_ACCURACY) -> float:
    """2 |Li(x**rho) - i pi|, the envelope of the oscillating pair term.

    The i*pi carried by Ei above the real axis cancels against its
    conjugate partner, so it is not part of the oscillation.
    """
    return float(2 * abs(logint.ei(zero.rho * math.log(x), acc) - 1j * math.pi))


def zero_pair_bound(x: float, zero: ZetaZero) -> float:
    """2 sqrt(x) / (|rho| log x)."""
    return 2 * math.sqrt(x) / (abs(zero.rho) * math.log(x))


def riemann_main_terms(x: float) -> float:
    """sum_{n <= log2 x} mu(n)/n Li(x**(1/n)), the zero-free part."""
    return math.fsum(
        mobius(n) / n * logint.Li(kth_root(x, n)) for n in range(1, _max_index(x) + 1) if mobius(n)
    )


def explicit_formula_residual(x: float, table: PrimeTable, zeros: ZeroTable, count: int) -> float:
    """Main terms minus the first ``count`` zero pairs, minus pi_half(x).

    Only the n = 1 zero terms are included and the small constant terms of
    the full formula are left out, so this is a magnitude check.
    """
    if count > len(zeros):
        raise DomainError(f"only {len(zeros)} zeros available, asked for {count}")
    zero_sum = math.fsum(zero_pair_term(x, z) for z in zeros.zeros[:count])
    return riemann_main_terms(x) - zero_sum - float(pi_half(x, table))


@dataclass(frozen=True)
class MagnitudeReport:
    x: float
    squares_term: float
    squares_approx: float
    rho1_term: float
    rho1_amplitude: float
    rho1_bound: float

    @property
    def squares_dominate(self) -> bool:
        return abs(self.squares_term) > self.rho1_amplitude


def bias_magnitude_comparison(x: float, zeros: ZeroTable, table: PrimeTable) -> MagnitudeReport:
    """Prime squares' share of pi(x) against the first zero's.

    The squares enter through the n = 2 inversion term -f(sqrt x)/2, which
    is about -sqrt(x)/log x.  The first zero's pair term oscillates with
    amplitude about 2 sqrt(x)/(|rho_1| log x).  The squares dominate when
    their term exceeds that amplitude, not just the current value.
    """
    if x < 10**4:
        raise DomainError(f"x must be >= 10^4, got {x}")
    first = zeros[0]
    return MagnitudeReport(
        x=x,
        squares_term=-0.5 * float(f_weighted_count_exact(kth_root(x, 2), table)),
        squares_approx=-math.sqrt(x) / math.log(x),
        rho1_term=zero_pair_term(x, first),
        rho1_amplitude=zero_pair_amplitude(x, first),
        rho1_bound=zero_pair_bound(x, first),
    )
