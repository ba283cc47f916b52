import math

import pytest
from hypothesis import given, settings, strategies as st

from lunezeta.oracle import brute_single_log_product
from lunezeta.result import DomainError
from lunezeta.seq_zeta import harmonic
from lunezeta.simple_zeta import (
    SimpleZetaParams,
    z_continued,
    z_invariants,
    z_laurent,
    z_log_fredholm,
    z_poles,
    z_value,
    z_zeta0,
    z_zeta0_prime,
)
from lunezeta.specfun import CONSTANTS, LOG_2PI, hurwitz_zeta, hurwitz_zeta_sderiv

# Frozen direct sums (computed once by exact-rational partial sums plus a tail expansion).
Z_VALUE_REF = [
    ((1.5, 2, 0.5, -0.2), 2.3, 0.4626106793304858),
    ((1, 2, 1, -1), 1.7, 0.5259300535881789),
]


@pytest.mark.parametrize("args,s,expected", Z_VALUE_REF)
def test_z_value_frozen(args, s, expected):
    r = z_value(SimpleZetaParams(*args), s)
    assert r.value == pytest.approx(expected, abs=1e-13)


def test_z_value_trivial():
    assert z_value(SimpleZetaParams(0, 2, 0, 0), 1.0).value == pytest.approx(math.pi**2 / 6, abs=1e-14)
    # sum (n (n + 1))^-2 = pi^2 / 3 - 3
    assert z_value(SimpleZetaParams(0, 2, 0.5, -0.25), 2.0).value == pytest.approx(math.pi**2 / 3 - 3, abs=1e-14)
    with pytest.raises(DomainError):
        z_value(SimpleZetaParams(1, 2, 0, 0), 1.0)


def test_parameter_validation():
    with pytest.raises(DomainError):
        SimpleZetaParams(-1, 2, 0, 0)
    with pytest.raises(DomainError):
        SimpleZetaParams(0, 0, 0, 0)
    with pytest.raises(DomainError):
        SimpleZetaParams(0, 2, 0, -1.0)
    assert SimpleZetaParams(1, 2, 0, 0).integer_branch == 1
    assert SimpleZetaParams(0, 2, 0, 0).integer_branch is None


def test_invariants_half_shift():
    # {(n + 1/2)^2 - 1/4} = {n (n + 1)}: z(0) = -1 and z'(0) = -log 2 pi
    params = SimpleZetaParams(0, 2, 0.5, -0.25)
    for route in ("a", "b"):
        inv = z_invariants(params, route)
        assert inv.zeta0.value == pytest.approx(-1.0, abs=1e-14)
        assert inv.zeta0_prime.value == pytest.approx(-LOG_2PI, abs=1e-13)


def test_invariants_integer_branch():
    # multiplicity n + 1 on {(n + 1)^2 - 1}: z(0) = zeta_H(-1, 2) + p / 2 = -7/12 at p = -1
    params = SimpleZetaParams(1, 2, 1, -1)
    assert z_zeta0(params).value == pytest.approx(-7 / 12, abs=1e-14)
    zp = z_zeta0_prime(params).value
    assert zp == pytest.approx(-0.6376951068409565, abs=1e-13)
    assert zp == pytest.approx(2 * CONSTANTS.zetaprime_minus1 + math.log(2) - 1, abs=1e-13)
    assert z_invariants(params, "b").zeta0_prime.value == pytest.approx(zp, abs=1e-12)


def test_log_fredholm_matches_product():
    # log prod_{n>=2} (1 - 1/n^2)^n e^(1/n), the product behind the integer-branch example
    lf = z_log_fredholm(SimpleZetaParams(1, 2, 1, -1))
    brute = brute_single_log_product()
    assert abs(lf.value - brute.value) <= 1e-10


@pytest.mark.parametrize("alpha,beta,x", [(0, 2, 0.3), (2, 2, 1.0), (1, 3, 0.5)])
def test_zero_shift(alpha, beta, x):
    inv = z_invariants(SimpleZetaParams(alpha, beta, x, 0.0))
    assert inv.zeta0.value == pytest.approx(hurwitz_zeta(-alpha, x + 1).value, abs=1e-14)
    assert inv.zeta0_prime.value == pytest.approx(beta * hurwitz_zeta_sderiv(-alpha, x + 1).value, abs=1e-13)


def test_small_p_limit_is_linear():
    alpha, beta, x = 1, 3, 0.5
    base = beta * hurwitz_zeta_sderiv(-alpha, x + 1).value
    d1 = z_zeta0_prime(SimpleZetaParams(alpha, beta, x, 1e-3)).value - base
    d2 = z_zeta0_prime(SimpleZetaParams(alpha, beta, x, 2e-3)).value - base
    assert d2 / d1 == pytest.approx(2.0, rel=1e-2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3), st.floats(0.0, 2.0), st.floats(-0.8, 0.8))
def test_routes_agree(alpha, x, frac):
    p = frac * (1 + x) ** 2
    params = SimpleZetaParams(alpha, 2, x, p)
    a, b = z_invariants(params, "a"), z_invariants(params, "b")
    assert abs(a.zeta0.value - b.zeta0.value) <= a.zeta0.abs_err + b.zeta0.abs_err + 1e-12
    assert abs(a.zeta0_prime.value - b.zeta0_prime.value) <= a.zeta0_prime.abs_err + b.zeta0_prime.abs_err + 1e-10


@pytest.mark.parametrize("args", [(0, 2, 0.5, -0.2), (1, 2, 1, -1), (2, 2, 0.0, 0.5), (1.5, 2, 0.5, -0.2)])
def test_continuation_consistency(args):
    params = SimpleZetaParams(*args)
    s = params.critical + 0.5
    assert z_continued(params, s).value == pytest.approx(z_value(params, s).value, abs=1e-10)


@pytest.mark.parametrize("alpha,m", [(1, 1), (1, 2), (2, 1)])
@pytest.mark.parametrize("sign", [1, -1])
def test_branch_limit(alpha, m, sign):
    # near beta = (1 + alpha)/m the generic formula has a 1/delta term; removing it
    # (with its harmonic companion) recovers the integer-branch value
    x, p = 1.0, -0.5
    ref = z_zeta0_prime(SimpleZetaParams(alpha, (1 + alpha) / m, x, p)).value
    beta = (1 + alpha) / m + sign * 1e-6
    delta = beta * m - alpha - 1
    v = z_zeta0_prime(SimpleZetaParams(alpha, beta, x, p)).value
    corrected = v - (-1) ** m * p**m / (m * delta) + (-1) ** m * p**m * harmonic(m) / (m * beta)
    assert abs(corrected - ref) < 1e-4


def test_laurent_at_pole():
    # z(s; 0, 2, 1/2, 0) = zeta_H(2s, 3/2): residue 1/2 at s = 1/2
    L = z_laurent(SimpleZetaParams(0, 2, 0.5, 0.0), 0.5)
    assert L.residue.real == pytest.approx(0.5, abs=1e-15)


def test_poles():
    assert z_poles(SimpleZetaParams(0, 2, 0.5, 0.0)) == [(0.5, 0.5)]
    assert z_poles(SimpleZetaParams(1, 2, 1, 0.0)) == [(1.0, 0.5)]
    poles = z_poles(SimpleZetaParams(1, 2, 1, -1.0), floor=-3.0)
    locations = [loc for loc, _ in poles]
    assert locations == [1.0]  # 0, -1, -2, -3 are excluded
    poles = z_poles(SimpleZetaParams(0, 2, 0.5, 0.3), floor=-2.0)
    assert [loc for loc, _ in poles] == [0.5, -0.5, -1.5]
    # residue at 1/2 - j is C(-s, j) p^j / beta evaluated at s = 1/2 - j
    assert poles[1][1] == pytest.approx(0.5 * 0.3 / 2)  # C(1/2, 1) = 1/2


def test_unknown_route():
    with pytest.raises(ValueError):
        z_invariants(SimpleZetaParams(0, 2, 0, 0), "c")
    with pytest.raises(DomainError):
        z_invariants(SimpleZetaParams(0, 3, 0, 0), "b")
