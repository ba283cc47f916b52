import math

import numpy as np
import pytest

from lunezeta.quadrature import (
    QuadratureConfig,
    PlanaIntegrand,
    integrate,
    plana_integral,
    plana_moment,
    plana_weight,
)
from lunezeta.result import ConvergenceError, DomainError
from lunezeta.specfun import hurwitz_zeta

# zeta(2k) for k = 1..4
ZETA_EVEN = [math.pi**2 / 6, math.pi**4 / 90, math.pi**6 / 945, math.pi**8 / 9450]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_moment_closed_form(k):
    expected = math.gamma(2 * k) * ZETA_EVEN[k - 1] / (2 * math.pi) ** (2 * k)
    assert plana_moment(k) == pytest.approx(expected, rel=1e-14)
    r = plana_integral(lambda y: y ** (2 * k - 1))
    assert abs(r.value - expected) <= max(r.abs_err, 1e-15)
    assert abs(r.value - expected) < 1e-13


def _hermite(s, q):
    return lambda y: (1j * ((q + 1j * y) ** (-s) - (q - 1j * y) ** (-s))).real


@pytest.mark.parametrize("s", [2.0, 3.0])
@pytest.mark.parametrize("q", [1.0, 1.7])
def test_abel_plana_closure(s, q):
    # zeta_H(s, q) = q^-s / 2 + q^(1-s) / (s - 1) + int_0^inf 2 r^-s sin(s theta) / (e^(2 pi y) - 1) dy
    r = plana_integral(_hermite(s, q))
    rebuilt = q ** (-s) / 2 + q ** (1 - s) / (s - 1) + r.value
    assert rebuilt == pytest.approx(hurwitz_zeta(s, q).value, abs=1e-11)


def test_halving_stability():
    f = _hermite(2.5, 0.8)
    coarse = plana_integral(f, QuadratureConfig(target_abs_err=1e-10, rel_err=1e-10))
    fine = plana_integral(f, QuadratureConfig(target_abs_err=1e-14, max_panels=800))
    assert abs(coarse.value - fine.value) <= coarse.abs_err + fine.abs_err
    assert fine.abs_err < 1e-12


def test_vector_components():
    r = plana_integral(lambda y: np.stack([y, y**3]))
    assert r.value[0] == pytest.approx(1 / 24, abs=1e-14)
    assert r.value[1] == pytest.approx(1 / 240, abs=1e-14)


def test_regularity_is_checked():
    with pytest.raises(DomainError):
        plana_integral(PlanaIntegrand(lambda y: np.cos(y), name="cos"))
    # the check can be switched off when the caller knows better
    r = plana_integral(PlanaIntegrand(lambda y: np.sin(y)), check=False)
    assert np.isfinite(r.value)


def test_convergence_error():
    cfg = QuadratureConfig(target_abs_err=1e-15, rel_err=1e-15, max_panels=2)
    with pytest.raises(ConvergenceError):
        integrate(lambda x: np.sin(40 * x) ** 2 / (1e-3 + x), 0.0, 10.0, cfg)


def test_bad_config():
    with pytest.raises(ValueError):
        QuadratureConfig(target_abs_err=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_panels=0)
    with pytest.raises(DomainError):
        integrate(np.sin, 0.0, np.inf)


@pytest.mark.parametrize("deg", [0, 3, 7, 11])
def test_polynomial_exactness(deg):
    # the embedded 7-point Gauss rule is exact through degree 13, so one panel suffices for modest degrees
    r = integrate(lambda x: x**deg, -1.0, 2.0, QuadratureConfig(max_panels=1))
    exact = (2.0 ** (deg + 1) - (-1.0) ** (deg + 1)) / (deg + 1)
    assert r.value == pytest.approx(exact, rel=1e-13)


def test_high_degree_needs_bisection():
    r = integrate(lambda x: x**20, -1.0, 2.0)
    assert r.value == pytest.approx((2.0**21 + 1) / 21, rel=1e-13)


def test_weight_near_origin():
    y = np.array([1e-14, 1e-8, 1.0])
    w = plana_weight(y)
    assert w[0] * 2 * math.pi * 1e-14 == pytest.approx(1.0, rel=1e-12)
    assert w[2] == pytest.approx(1 / math.expm1(2 * math.pi))
