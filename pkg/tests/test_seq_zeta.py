import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lunezeta.result import DomainError
from lunezeta.seq_zeta import (
    harmonic,
    log_fredholm,
    odd_harmonic,
    shift_invariants,
    sqrt_shift,
    square_product_invariants,
)
from lunezeta.simple_zeta import LinearPowerSequence, PowerSequence
from lunezeta.specfun import LOG_2PI, ln_gamma


def test_harmonic_numbers():
    assert harmonic(1) == 0.0
    assert harmonic(4) == pytest.approx(1 + 1 / 2 + 1 / 3)
    assert odd_harmonic(1) == 1.0
    assert odd_harmonic(3) == pytest.approx(1 + 1 / 3 + 1 / 5)


@settings(max_examples=40, deadline=None)
@given(st.floats(-0.5, 3.0), st.floats(-0.45, 0.45))
def test_trivial_shift_matches_hurwitz(x, d):
    # {n + x + d} has zeta(0) = 1/2 - (x + d + 1) and zeta'(0) = log Gamma(x + d + 1) - log(2 pi) / 2
    T0 = PowerSequence(0, 1, x)
    inv = shift_invariants(T0, d)
    assert inv.zeta0.value == pytest.approx(0.5 - (x + d + 1), abs=1e-13)
    expected = ln_gamma(x + d + 1).value.real - 0.5 * LOG_2PI
    assert abs(inv.zeta0_prime.value - expected) <= inv.zeta0_prime.abs_err + 1e-13


@pytest.mark.parametrize("x,d", [(0.0, 0.3), (0.5, -0.7), (2.0, 2.5)])
def test_genus_two_shift_matches_linear_sequence(x, d):
    # multiplicity n + x on {n + x + d}: zeta_H(s - 1, .) - d zeta_H(s, .)
    inv = shift_invariants(PowerSequence(1, 1, x), d)
    lin = LinearPowerSequence(1, x, d)
    assert inv.zeta0.value == pytest.approx(lin.zeta0().value, abs=1e-13)
    assert inv.zeta0_prime.value == pytest.approx(lin.zeta0_prime().value, abs=1e-12)


def test_derivative_in_shift_is_minus_residue():
    T0 = PowerSequence(0, 1, 0.25)
    h = 1e-4
    z = [shift_invariants(T0, 0.2 + k * h).zeta0.value for k in (-1, 1)]
    assert (z[1] - z[0]) / (2 * h) == pytest.approx(-T0.res1_at(1).value, abs=1e-10)


def test_log_fredholm_against_product():
    x, d = 0.3, 0.9
    N = 2_000_000
    lam = np.arange(1, N + 1, dtype=float) + x
    u = d / lam
    head = math.fsum(np.log1p(u) - u)
    tail = -d**2 / 2 / (N + x + 0.5)  # sum_{n > N} of -u^2/2, midpoint estimate
    r = log_fredholm(PowerSequence(0, 1, x), d)
    assert r.value == pytest.approx(head + tail, abs=1e-11)
    assert r.abs_err < 1e-13


def test_fredholm_domain():
    T0 = PowerSequence(0, 1, 0.0)
    with pytest.raises(DomainError):
        log_fredholm(T0, 1.0)
    with pytest.raises(DomainError):
        shift_invariants(T0, -1.5)
    assert log_fredholm(T0, 0).value == 0.0


@pytest.mark.parametrize("x,p", [(0.0, 0.5), (1.0, -1.0), (0.5, 2.0)])
def test_square_product_matches_shift(x, p):
    a = shift_invariants(PowerSequence(0, 2, x), p).real()
    b = square_product_invariants(LinearPowerSequence(0, x), sqrt_shift(p))
    assert b.zeta0.value == pytest.approx(a.zeta0.value, abs=1e-12)
    assert b.zeta0_prime.value == pytest.approx(a.zeta0_prime.value, abs=1e-11)


def test_even_residue_correction():
    # with multiplicity n + x the unshifted sequence has a pole at s = 2 and the
    # squared formula needs the correction -(-1) (1) Res d^2 = +p
    x, p = 0.5, 0.8
    a = shift_invariants(PowerSequence(1, 2, x), p).real()
    T0 = LinearPowerSequence(1, x)
    full = square_product_invariants(T0, sqrt_shift(p), genus_p=2)
    bare = square_product_invariants(T0, sqrt_shift(p), genus_p=1)
    assert full.zeta0_prime.value == pytest.approx(a.zeta0_prime.value, abs=1e-11)
    assert full.zeta0_prime.value - bare.zeta0_prime.value == pytest.approx(p, abs=1e-14)


def test_sqrt_shift():
    assert sqrt_shift(4.0) == 2.0
    assert sqrt_shift(-9.0) == 3j
