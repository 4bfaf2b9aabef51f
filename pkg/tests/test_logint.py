import math
import random

import mpmath
import numpy as np
import pytest

from legendre_bias.errors import AccuracyError, DomainError
from legendre_bias.logint import (
    EvalAccuracy,
    Li,
    LiBelowTwoWarning,
    ei,
    ei_series,
    li,
    li_asymptotic,
    li_quad,
    switch_self_test,
)

# frozen from 30-digit mpmath evaluations
LI_1E6 = 78626.5039956820644
LI_CAP_1E6 = 78627.5491594621819
EI_1 = 1.89511781635593675  # sum 1/(k k!) + gamma, summed at 30 digits
ASYMPTOTIC_2_1E6 = 77621.6274564201360


def test_li_at_two_is_zero():
    assert li(2) == 0.0


def test_li2_constant():
    assert Li(2) == pytest.approx(1.04516, abs=1e-5)
    for x in (10, 1e3, 1e6):
        assert Li(x) - li(x) == pytest.approx(1.04516378011749, abs=1e-9)


def test_frozen_values():
    assert li(1e6) == pytest.approx(LI_1E6, abs=1e-8)
    assert li_quad(1e6) == pytest.approx(LI_1E6, abs=1e-8)
    assert Li(1e6) == pytest.approx(LI_CAP_1E6, abs=1e-8)


def test_li_vectorised():
    xs = np.array([10.0, 1e3, 1e6])
    out = li(xs)
    assert out.shape == (3,)
    assert out.tolist() == [li(float(x)) for x in xs]


def test_li_domain():
    with pytest.raises(DomainError):
        li(1.0)
    with pytest.raises(DomainError):
        Li(0.5)
    with pytest.warns(LiBelowTwoWarning):
        value = li(1.5)
    assert value < 0
    assert value == pytest.approx(float(mpmath.li(1.5) - mpmath.li(2)), abs=1e-12)
    assert li_quad(1.5) == pytest.approx(value, abs=1e-12)


def test_li_agrees_with_quadrature_on_log_grid():
    for x in np.logspace(1, 8, 50):
        assert abs(li(x) - li_quad(x)) < 1e-6


def test_li_derivative():
    for x in (10.0, 1e3, 1e6):
        h = x * 1e-4
        slope = (li(x + h) - li(x - h)) / (2 * h)
        assert slope == pytest.approx(1 / math.log(x), rel=1e-6)


def test_ei_examples():
    assert ei(math.log(2)) == pytest.approx(1.04516, abs=1e-5)
    assert ei(1.0) == pytest.approx(EI_1, abs=1e-12)
    assert ei(complex(1, 0)).real == pytest.approx(EI_1, abs=1e-12)
    assert isinstance(ei(2.0), float)
    assert ei(-30.0) == pytest.approx(float(mpmath.ei(-30)), rel=1e-12)


def test_ei_reflection():
    rng = random.Random(7)
    for _ in range(100):
        r = rng.uniform(0.1, 300)
        theta = rng.uniform(-math.pi + 1e-3, math.pi - 1e-3)
        z = complex(r * math.cos(theta), r * math.sin(theta))
        if z.real > 600:
            continue
        assert ei(z.conjugate()) == ei(z).conjugate()


def test_ei_matches_mpmath_across_regimes():
    rng = random.Random(11)
    for _ in range(300):
        r = 10 ** rng.uniform(-2, 2.6)
        theta = rng.uniform(-math.pi, math.pi)
        z = complex(r * math.cos(theta), r * math.sin(theta))
        ref = complex(mpmath.ei(mpmath.mpc(z.real, z.imag)))
        assert abs(ei(z) - ref) <= 1e-9 * max(1.0, abs(ref))


def test_ei_near_positive_axis():
    for z in (25 + 1e-12j, 30 - 1e-6j, 60 + 0.5j, 39.9 + 2j):
        ref = complex(mpmath.ei(mpmath.mpc(z.real, z.imag)))
        assert abs(ei(z) - ref) <= 1e-12 * abs(ref)


def test_ei_errors():
    with pytest.raises(DomainError):
        ei(0.0)
    with pytest.raises(DomainError):
        ei(0j)
    with pytest.raises(AccuracyError) as info:
        ei_series(5 + 5j, EvalAccuracy(max_terms=3))
    assert info.value.partial is not None
    with pytest.raises(DomainError):
        EvalAccuracy(abs_tol=0)
    with pytest.raises(DomainError):
        EvalAccuracy(max_terms=0)


def test_series_and_continued_fraction_agree_on_switch_annulus():
    assert switch_self_test(radii=(20.0, 22.0, 24.0, 26.0, 28.0), n_angles=96) < 1e-8


def test_li_asymptotic_examples():
    x = 1e6
    assert li_asymptotic(x, 1) == x / math.log(x)
    e = math.e
    assert li_asymptotic(e, 4) == pytest.approx(e * (1 + 1 + 2 + 6))
    assert li_asymptotic(x, 2) == pytest.approx(ASYMPTOTIC_2_1E6, rel=1e-14)
    with pytest.raises(DomainError):
        li_asymptotic(x, 0)
    with pytest.raises(DomainError):
        li_asymptotic(x, 21)
    with pytest.raises(DomainError):
        li_asymptotic(1.0, 3)


@pytest.mark.parametrize("x", np.logspace(3, 9, 13))
def test_li_asymptotic_improves_at_low_order(x):
    target = li(x)
    errors = [abs(li_asymptotic(x, k) - target) for k in range(1, 5)]
    assert errors == sorted(errors, reverse=True)
    assert len(set(errors)) == 4
