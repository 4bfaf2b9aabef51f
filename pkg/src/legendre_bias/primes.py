"""Exact prime counting and the arithmetic functions built on it.

The sieve is a segmented, odd-only sieve of Eratosthenes over numpy byte
masks.  A :class:`PrimeTable` keeps the sorted primes together with exact
prime counts at a fixed stride, so ``pi(x)`` only has to scan between two
neighbouring checkpoints.
"""

from __future__ import annotations

import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import CacheError, DomainError, OutOfRangeError, ResourceError

MAX_LIMIT = 10**9
DEFAULT_STRIDE = 10**4
DEFAULT_SEGMENT = 2**20

CACHE_HEADER = "# pi-table v1 limit={limit} stride={stride}"


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Sorted primes ``<= limit`` plus exact counts every ``stride`` integers.

    ``counts[k]`` is pi(k * stride).  Arrays are read-only.
    """

    limit: int
    primes: np.ndarray
    stride: int
    counts: np.ndarray

    def __len__(self):
        return len(self.primes)

    @property
    def checkpoints(self) -> dict[int, int]:
        return {k * self.stride: int(c) for k, c in enumerate(self.counts)}

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise OutOfRangeError(f"{n} exceeds table limit {self.limit}")
        if n < 2:
            return False
        i = np.searchsorted(self.primes, n)
        return i < len(self.primes) and int(self.primes[i]) == n


@dataclass(frozen=True)
class PrimePowerWeight:
    """A prime power ``base**exponent`` with Riemann weight 1/exponent."""

    base: int
    exponent: int

    @property
    def value(self) -> int:
        return self.base**self.exponent

    @property
    def weight(self) -> Fraction:
        return Fraction(1, self.exponent)


def _small_primes(n: int) -> np.ndarray:
    """Plain sieve for the base primes up to ``n``."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _sieve_segment(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Odd primes in ``[lo, hi)``; ``lo`` odd, base primes cover sqrt(hi)."""
    size = (hi - lo + 1) // 2
    mask = np.ones(size, dtype=np.uint8)
    for p in base:
        p = int(p)
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        mask[(start - lo) // 2 :: p] = 0
    if lo == 1:
        mask[0] = 0
    return lo + 2 * np.flatnonzero(mask).astype(np.int64)


def build_prime_table(
    limit: int,
    *,
    stride: int = DEFAULT_STRIDE,
    segment: int = DEFAULT_SEGMENT,
    workers: int = 1,
    cap: int = MAX_LIMIT,
) -> PrimeTable:
    """Sieve all primes up to ``limit`` inclusive.

    Segments of ``segment`` integers are sieved independently and may run on
    ``workers`` threads; results are assembled in segment order, so the table
    does not depend on the worker count.
    """
    limit = int(limit)
    if limit < 2:
        raise DomainError(f"limit must be >= 2, got {limit}")
    if limit > cap:
        raise ResourceError(f"limit {limit} exceeds the cap {cap}")
    if stride < 1 or segment < 2:
        raise DomainError("stride and segment must be positive")
    segment += segment % 2

    base = _small_primes(math.isqrt(limit) + 1)[1:]
    bounds = [(lo, min(lo + segment, limit + 1)) for lo in range(1, limit + 1, segment)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: _sieve_segment(b[0], b[1], base), bounds))
    else:
        parts = [_sieve_segment(lo, hi, base) for lo, hi in bounds]

    primes = np.concatenate([np.array([2], dtype=np.int64), *parts])
    counts = np.searchsorted(primes, np.arange(0, limit + 1, stride), side="right")
    primes.setflags(write=False)
    counts = counts.astype(np.int64)
    counts.setflags(write=False)
    return PrimeTable(limit=limit, primes=primes, stride=stride, counts=counts)


def _check_range(x, table: PrimeTable) -> int:
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    n = math.floor(x)
    if n > table.limit:
        raise OutOfRangeError(
            f"x={x} exceeds the sieve limit {table.limit}; re-sieve with a larger limit"
        )
    return n


def pi(x: float, table: PrimeTable) -> int:
    """Number of primes ``<= x`` (pi at a real argument is pi(floor(x)))."""
    n = _check_range(x, table)
    k = n // table.stride
    lo = int(table.counts[k])
    hi = int(table.counts[k + 1]) if k + 1 < len(table.counts) else len(table.primes)
    return lo + int(np.searchsorted(table.primes[lo:hi], n, side="right"))


def pi_array(xs, table: PrimeTable) -> np.ndarray:
    """Vectorised :func:`pi` for many sample points at once."""
    xs = np.floor(np.asarray(xs, dtype=np.float64))
    if xs.size and (xs.min() < 0 or xs.max() > table.limit):
        raise OutOfRangeError(f"sample points outside [0, {table.limit}]")
    return np.searchsorted(table.primes, xs, side="right").astype(np.int64)


def primes_between(lo: int, hi: int, table: PrimeTable) -> np.ndarray:
    """All primes ``p`` with ``lo <= p <= hi``, ascending."""
    if lo < 2 or lo > hi:
        raise DomainError(f"need 2 <= lo <= hi, got lo={lo} hi={hi}")
    if hi > table.limit:
        raise OutOfRangeError(f"hi={hi} exceeds the sieve limit {table.limit}")
    i = np.searchsorted(table.primes, lo, side="left")
    j = np.searchsorted(table.primes, hi, side="right")
    return table.primes[i:j]


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division."""
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def mobius(n: int) -> int:
    if n < 1:
        raise DomainError(f"mobius is defined for n >= 1, got {n}")
    factors = factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def prime_powers(x: float, table: PrimeTable):
    """Yield every :class:`PrimePowerWeight` with value ``<= x``."""
    n = _check_range(x, table)
    for p in table.primes[: np.searchsorted(table.primes, n, side="right")]:
        p = int(p)
        k, pk = 1, p
        while pk <= n:
            yield PrimePowerWeight(p, k)
            k += 1
            pk *= p


def f_weighted_count_exact(x: float, table: PrimeTable) -> Fraction:
    """Sum of 1/k over prime powers p**k <= x, half weight at p**k == x.

    Primes enter in bulk (their exponent-one weights are all 1); higher
    powers are enumerated one by one from the primes up to sqrt(x).
    """
    n = _check_range(x, table)
    if n < 2:
        return Fraction(0)
    exact = x == n
    per_exponent = {1: int(np.searchsorted(table.primes, n, side="right"))}
    hit = 1 if exact and table.is_prime(n) else None
    for p in table.primes[: np.searchsorted(table.primes, math.isqrt(n), side="right")]:
        p = int(p)
        k, pk = 2, p * p
        while pk <= n:
            per_exponent[k] = per_exponent.get(k, 0) + 1
            if exact and pk == n:
                hit = k
            k += 1
            pk *= p
    total = sum((Fraction(c, k) for k, c in per_exponent.items()), Fraction(0))
    if hit is not None:
        total -= Fraction(1, 2 * hit)
    return total


def f_weighted_count(x: float, table: PrimeTable) -> float:
    return float(f_weighted_count_exact(x, table))


# pi-checkpoint cache -------------------------------------------------------


@dataclass(frozen=True)
class PiCache:
    limit: int
    stride: int
    checkpoints: dict[int, int]


def write_pi_cache(table: PrimeTable, path) -> Path:
    path = Path(path)
    lines = [CACHE_HEADER.format(limit=table.limit, stride=table.stride)]
    lines += [f"{x},{c}" for x, c in table.checkpoints.items()]
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    return path


def read_pi_cache(path) -> PiCache:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CacheError(f"cannot read {path}: {exc}") from exc
    lines = text.splitlines()
    if not lines:
        raise CacheError(f"{path} is empty")
    parts = lines[0].split()
    try:
        if parts[:3] != ["#", "pi-table", "v1"] or len(parts) != 5:
            raise ValueError
        fields = dict(p.split("=", 1) for p in parts[3:])
        limit, stride = int(fields["limit"]), int(fields["stride"])
    except (ValueError, KeyError):
        raise CacheError(f"{path}: bad header {lines[0]!r}") from None
    checkpoints: dict[int, int] = {}
    prev = -1
    for lineno, line in enumerate(lines[1:], start=2):
        try:
            xs, cs = line.split(",")
            x, c = int(xs), int(cs)
        except ValueError:
            raise CacheError(f"{path}:{lineno}: malformed line {line!r}") from None
        if x <= prev or x > limit:
            raise CacheError(f"{path}:{lineno}: checkpoints must ascend within the limit")
        checkpoints[x] = c
        prev = x
    return PiCache(limit=limit, stride=stride, checkpoints=checkpoints)


def validate_pi_cache(cache: PiCache, table: PrimeTable, samples: int = 3, seed: int = 0):
    """Spot-check ``samples`` random checkpoints against a freshly built sieve."""
    if cache.limit != table.limit:
        raise CacheError(f"cache limit {cache.limit} differs from sieve limit {table.limit}")
    keys = sorted(cache.checkpoints)
    rng = random.Random(seed)
    for x in rng.sample(keys, min(samples, len(keys))):
        if cache.checkpoints[x] != pi(x, table):
            raise CacheError(f"cache says pi({x})={cache.checkpoints[x]}, sieve says {pi(x, table)}")
