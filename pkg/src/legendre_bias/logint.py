"""Logarithmic and exponential integrals.

``li(x)`` integrates 1/log t from 2, ``Li(x)`` from 0 (principal value), and
both go through ``Ei(log x)``.  ``Ei`` is evaluated by its power series
inside ``SWITCH_RADIUS`` and by a continued fraction for E1(-z) outside it.
Real series are summed in ``np.longdouble``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import AccuracyError, DomainError

EULER_GAMMA = 0.577215664901532860606512090082402431
SWITCH_RADIUS = 24.0
_REAL_ASYMPTOTIC_FROM = 40.0
_EPS = float(np.finfo(np.float64).eps)
_WEDGE = math.pi / 8


class LiBelowTwoWarning(UserWarning):
    """li(x) was requested for 1 < x < 2, below the lower integration limit."""


@dataclass(frozen=True)
class EvalAccuracy:
    abs_tol: float = 1e-9
    max_terms: int = 10_000

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError(f"abs_tol must be positive, got {self.abs_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_ACCURACY = EvalAccuracy()


# Ei on the positive real axis ----------------------------------------------


def _ei_real_series(u: np.ndarray, max_terms: int) -> np.ndarray:
    u = u.astype(np.longdouble)
    term = np.ones_like(u)
    total = np.zeros_like(u)
    eps = np.finfo(np.longdouble).eps
    for k in range(1, max_terms + 1):
        term = term * u / k
        piece = term / k
        total += piece
        if k > u.max() and np.all(np.abs(piece) <= eps * np.abs(total)):
            return total + np.longdouble(EULER_GAMMA) + np.log(u)
    raise AccuracyError("Ei series did not converge", partial=total.astype(float))


def _ei_real_asymptotic(u: np.ndarray) -> np.ndarray:
    u = u.astype(np.longdouble)
    term = np.ones_like(u)
    total = np.ones_like(u)
    active = np.ones(u.shape, dtype=bool)
    for k in range(1, int(u.max()) + 1):
        nxt = term * k / u
        # stop each element at its smallest term
        active &= np.abs(nxt) < np.abs(term)
        term = np.where(active, nxt, term)
        total += np.where(active, nxt, 0)
        if not active.any():
            break
    return np.exp(u) / u * total


def ei_real(u, acc: EvalAccuracy = DEFAULT_ACCURACY):
    """Ei(u) for real ``u > 0``, vectorised."""
    arr = np.asarray(u, dtype=np.float64)
    if arr.size and not np.all(arr > 0):
        raise DomainError("ei_real requires u > 0")
    out = np.empty(arr.shape, dtype=np.longdouble)
    small = arr <= _REAL_ASYMPTOTIC_FROM
    if small.any():
        out[small] = _ei_real_series(arr[small], acc.max_terms)
    if (~small).any():
        out[~small] = _ei_real_asymptotic(arr[~small])
    out = out.astype(np.float64)
    return float(out) if out.ndim == 0 else out


# Ei in the complex plane ---------------------------------------------------


def ei_series(z: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """gamma + log z + sum z**k / (k k!), principal branch of log."""
    z = np.clongdouble(z)
    term = np.clongdouble(1)
    total = np.clongdouble(0)
    eps = np.finfo(np.longdouble).eps
    for k in range(1, acc.max_terms + 1):
        term *= z / k
        piece = term / k
        total += piece
        if k > abs(z) and abs(piece) <= eps * max(abs(total), 1):
            return complex(total + np.longdouble(EULER_GAMMA) + np.log(z))
    raise AccuracyError("Ei power series did not converge", partial=complex(total))


def e1_continued_fraction(w: complex, acc: EvalAccuracy = DEFAULT_ACCURACY) -> complex:
    """E1(w) by modified Lentz on e**-w / (w+1- 1/(w+3- 4/(w+5- ...)))."""
    tiny = 1e-300
    w = complex(w)
    b = w + 1
    c = 1 / tiny
    d = 1 / b
    h = d
    for i in range(1, acc.max_terms + 1):
        a = -float(i * i)
        b += 2
        d = a * d + b
        d = 1 / (d if d != 0 else tiny)
        c = b + a / c
        if c == 0:
            c = tiny
        delta = c * d
        h *= delta
        if abs(delta - 1) <= _EPS:
            return h * _exp(-w)
    raise AccuracyError("E1 continued fraction did not converge", partial=h * _exp(-w))


def _exp(z: complex) -> complex:
    try:
        return cmath.exp(z)
    except OverflowError:
        raise DomainError(f"exp({z}) overflows double precision") from None


def _sign_of_imag(z: complex) -> float:
    return math.copysign(1.0, z.imag)


def ei(z, acc: EvalAccuracy = DEFAULT_ACCURACY):
    """Exponential integral Ei(z).

    Real input returns the real (principal value) branch as a float.
    Complex input uses the principal branch of log z, so values on either
    side of the negative real axis differ by 2*pi*i.
    """
    if isinstance(z, (int, float, np.floating, np.integer)):
        x = float(z)
        if x == 0:
            raise DomainError("Ei(0) is undefined")
        if x > 0:
            return ei_real(x, acc)
        if -x <= SWITCH_RADIUS:
            return ei_series(complex(x, 0.0), acc).real
        return -e1_continued_fraction(complex(-x, 0.0), acc).real

    z = complex(z)
    if z == 0:
        raise DomainError("Ei(0) is undefined")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"Ei needs a finite argument, got {z}")
    if abs(z) <= SWITCH_RADIUS:
        return ei_series(z, acc)
    if z.imag == 0 and z.real > 0:
        return complex(ei_real(z.real, acc), z.imag)
    if abs(math.atan2(z.imag, z.real)) < _WEDGE:
        # E1(-z) continued fraction stalls near its cut; the series has no
        # cancellation here and the asymptotic form is exact to double by |z|=40
        if abs(z) < _REAL_ASYMPTOTIC_FROM:
            return ei_series(z, acc)
        return ei_asymptotic(z)
    return -e1_continued_fraction(-z, acc) + 1j * math.pi * _sign_of_imag(z)


def ei_asymptotic(z: complex) -> complex:
    """i*pi*sign(Im z) + e**z/z * sum k!/z**k, truncated at the smallest term."""
    term = total = 1 + 0j
    for k in range(1, int(abs(z)) + 1):
        nxt = term * k / z
        if abs(nxt) >= abs(term):
            break
        term = nxt
        total += term
    return _exp(z) / z * total + (1j * math.pi * _sign_of_imag(z) if z.imag != 0 else 0)


def switch_self_test(radii=(20.0, 24.0, 28.0), n_angles: int = 64, acc: EvalAccuracy = DEFAULT_ACCURACY):
    """Largest disagreement between the series and continued-fraction routes.

    Compared on circles in the switch annulus, outside the wedge around the
    positive real axis where the continued fraction is not used.  The
    discrepancy is measured relative to max(1, |Ei(z)|).
    """
    worst = 0.0
    for r in radii:
        for theta in np.linspace(-math.pi, math.pi, n_angles, endpoint=False):
            if abs(theta) < _WEDGE:
                continue
            z = complex(r * math.cos(theta), r * math.sin(theta))
            a = ei_series(z, acc)
            b = -e1_continued_fraction(-z, acc) + 1j * math.pi * _sign_of_imag(z)
            worst = max(worst, abs(a - b) / max(1.0, abs(a)))
    return worst


# li / Li -------------------------------------------------------------------

LI2 = ei_real(math.log(2.0))


def _check_li_domain(x: np.ndarray):
    if x.size and not np.all(x > 1):
        raise DomainError("li/Li are only defined here for x > 1")


def li(x, acc: EvalAccuracy = DEFAULT_ACCURACY):
    """Integral of 1/log t from 2 to x, as Ei(log x) - Ei(log 2)."""
    arr = np.asarray(x, dtype=np.float64)
    _check_li_domain(arr)
    if arr.size and np.any(arr < 2):
        warnings.warn("li(x) for x < 2 integrates backwards from 2", LiBelowTwoWarning, stacklevel=2)
    out = np.asarray(ei_real(np.log(arr), acc)) - LI2
    return float(out) if out.ndim == 0 else out


def Li(x, acc: EvalAccuracy = DEFAULT_ACCURACY):
    """Principal-value logarithmic integral from 0; Li(x) = li(x) + Li(2)."""
    arr = np.asarray(x, dtype=np.float64)
    _check_li_domain(arr)
    return ei_real(np.log(arr), acc)


def li_quad(x: float, abs_tol: float = 1e-10) -> float:
    """li(x) by adaptive quadrature of e**u / u over [log 2, log x].

    Independent of the series path; used to cross-check :func:`li`.
    """
    if not x > 1:
        raise DomainError("li is only defined here for x > 1")
    a, b = math.log(2.0), math.log(x)
    sign = 1.0
    if b < a:
        a, b, sign = b, a, -1.0
    # unit-width panels in u keep each panel's relative target reachable
    edges = np.append(np.arange(a, b, 1.0), b)
    pieces = [
        integrate.quad(lambda u: math.exp(u) / u, lo, hi, epsabs=abs_tol / len(edges), epsrel=1e-13, limit=200)[0]
        for lo, hi in zip(edges[:-1], edges[1:])
    ]
    return sign * math.fsum(pieces)


def li_asymptotic(x: float, terms: int) -> float:
    """Truncated expansion sum_{l < terms} l! x / (log x)**(l+1)."""
    if not x > 1:
        raise DomainError("li_asymptotic needs x > 1")
    if not 1 <= terms <= 20:
        raise DomainError("terms must lie in [1, 20]")
    L = math.log(x)
    return math.fsum(math.factorial(k) * x / L ** (k + 1) for k in range(terms))
