import math

import numpy as np
import pytest

from lunezeta.double_zeta import DoubleZetaParams, Z_log_fredholm
from lunezeta.oracle import (
    brute_log_product,
    brute_single_log_product,
    brute_zeta,
    finite_difference_check,
)
from lunezeta.result import DomainError
from lunezeta.spheres import DeformedSphere, pipeline_invariants, spectral_zeta

GAMMA_MINUS_LOG2 = -0.11593151565841245


def test_round_sphere_series():
    ell = np.arange(1, 20001, dtype=float)
    direct = math.fsum((2 * ell + 1) * (ell * (ell + 1)) ** -3.0)
    r = brute_zeta(DeformedSphere(2, 1.0), 3.0)
    assert r.value == pytest.approx(direct, abs=1e-12)
    assert r.abs_err < 1e-10


@pytest.mark.parametrize("dim,k,s", [(2, 0.5, 3.0), (3, 1 / 1.5, 4.5), (4, 0.8, 3.5)])
def test_brute_zeta_matches_pipeline(dim, k, s):
    sphere = DeformedSphere(dim, k)
    r = brute_zeta(sphere, s)
    assert abs(r.value - spectral_zeta(sphere, s).value) <= r.abs_err + 1e-11
    with pytest.raises(DomainError):
        brute_zeta(sphere, dim / 2)


@pytest.mark.parametrize("a", [1.0, 2.0])
def test_log_product_matches_fredholm(a):
    params = DoubleZetaParams(0, a, -0.5, -0.25)
    brute = brute_log_product(params)
    assert abs(brute.value - Z_log_fredholm(params).value) <= max(brute.abs_err, 1e-10)


def test_log_product_trivial():
    assert brute_log_product(DoubleZetaParams(0, 1.0, -0.5, 0.0)).value == 0.0


def test_single_product():
    r = brute_single_log_product()
    assert r.value == pytest.approx(GAMMA_MINUS_LOG2, abs=1e-12)


def test_finite_difference():
    d, err = finite_difference_check(lambda x: x * x, 3.0, 1e-3)
    assert d == pytest.approx(6.0, abs=1e-10)
    assert err < 1e-9


@pytest.mark.parametrize("dim", [2, 3])
def test_deformation_slope(dim):
    # d/da zeta'(0) at the round sphere; the analytic value is 2/3 in both dimensions
    d, err = finite_difference_check(lambda a: pipeline_invariants(dim, a)[1].value, 1.0, 1e-3)
    assert d == pytest.approx(2 / 3, abs=1e-5)
    assert err < 1e-5
