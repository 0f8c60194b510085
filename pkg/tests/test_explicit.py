import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_lab import CoverageError, DomainError
from goldbach_lab.explicit import (
    LOG_2PI,
    complex_gamma,
    fujii_residual,
    gamma_half_line_modulus,
    psi_explicit_residual,
    smooth_psi_residual,
    smooth_residual,
    sum_gamma_rho,
    sum_rho,
    sum_rho1,
)
from goldbach_lab.sieve import build_lambda
from goldbach_lab.zeros import ZeroTable


@pytest.fixture(scope="module")
def tab():
    return build_lambda(300_000)


def test_gamma_special_values():
    assert complex_gamma(1.0) == pytest.approx(1.0, abs=1e-12)
    assert complex_gamma(0.5) == pytest.approx(math.sqrt(math.pi), abs=1e-12)
    assert complex_gamma(5.0) == pytest.approx(24.0, rel=1e-13)
    assert complex_gamma(-0.5) == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-13)


@settings(max_examples=200, deadline=None)
@given(st.floats(min_value=-3.9, max_value=6.0), st.floats(min_value=-60.0, max_value=60.0))
def test_gamma_against_mpmath(re, im):
    s = complex(re, im)
    if min(abs(s + k) for k in range(5)) < 1e-3:
        return
    ref = complex(mpmath.gamma(mpmath.mpc(re, im)))
    assert abs(complex_gamma(s) - ref) <= 1e-12 * abs(ref) + 1e-300


def test_gamma_poles():
    for s in (0.0, -1.0, -7.0):
        with pytest.raises(DomainError):
            complex_gamma(s)


def test_half_line_modulus():
    t = np.linspace(0, 30, 50)
    g = np.array([abs(complex_gamma(complex(0.5, v))) for v in t])
    assert np.max(np.abs(g - gamma_half_line_modulus(t))) <= 1e-10


def brute_zero_sum(gammas, x, f):
    total = mpmath.mpf(0)
    for g in gammas:
        rho = mpmath.mpc(0.5, g)
        total += 2 * mpmath.re(f(rho, x))
    return float(total)


def test_sum_rho_brute(small_zeros):
    g = small_zeros.upto(200.0)
    for x in (10, 1000, 123457):
        ref = brute_zero_sum(g, x, lambda r, x: mpmath.mpf(x) ** r / r)
        got = sum_rho(small_zeros, x, 200.0)
        assert got.value == pytest.approx(ref, rel=1e-11, abs=1e-9)
        assert got.pairs_used == len(g) and got.T == 200.0


def test_sum_rho1_brute(small_zeros):
    g = small_zeros.upto(300.0)
    for N in (100, 10**6):
        ref = brute_zero_sum(g, N, lambda r, x: mpmath.mpf(x) ** (r + 1) / (r * (r + 1)))
        assert sum_rho1(small_zeros, N, 300.0).value == pytest.approx(ref, rel=1e-11)


def test_sum_gamma_rho_brute(small_zeros):
    g = small_zeros.upto(80.0)
    for N, shift in ((100, 0), (1000, 1), (10**5, 1)):
        ref = brute_zero_sum(g, N, lambda r, x: mpmath.gamma(r) * mpmath.mpf(x) ** (r + shift))
        got = sum_gamma_rho(small_zeros, N, shift)
        assert got.value == pytest.approx(ref, rel=1e-10)
        assert got.tail_estimate <= 1e-12 * abs(got.value) * 10


def test_zero_sum_coverage(small_zeros):
    with pytest.raises(CoverageError):
        sum_rho(small_zeros, 100, 1e5)
    empty = ZeroTable.from_ordinates([], max_gamma=10.0)
    assert sum_rho(empty, 100, 10.0).value == 0.0


def test_no_zeros_gives_prime_number_theorem_error(tab):
    empty = ZeroTable.from_ordinates([], max_gamma=1.0)
    r = psi_explicit_residual(tab, empty, 10**5, 1.0)
    assert r.formula == 0.0 and r.residual == r.truth


def test_psi_explicit_envelope(tab, small_zeros):
    for x in (1000, 10**4, 10**5):
        for T in (100.0, 1000.0, 2500.0):
            r = psi_explicit_residual(tab, small_zeros, x, T)
            assert abs(r.residual) <= r.envelope
            assert r.extras["T"] == T


def test_more_zeros_help(tab, small_zeros):
    # at x = 10^4 the zero sum to T = 2500 tracks R(x) far better than no zeros at all
    r = psi_explicit_residual(tab, small_zeros, 10**4, 2500.0)
    assert abs(r.residual) < 0.1 * abs(r.truth) + 1.0


def test_G_zero_sum_residual_small(tab, small_zeros):
    for N in (1000, 10**4, 10**5):
        r = fujii_residual(tab, small_zeros, N, 2500.0)
        assert abs(r.residual) <= 0.05 * r.envelope
        assert r.formula == pytest.approx(0.5 * N * N - 2 * sum_rho1(small_zeros, N, 2500.0).value)
    with pytest.raises(DomainError):
        fujii_residual(tab, small_zeros, 3, 100.0)


def test_smooth_psi_constant_term(tab, small_zeros):
    # what is left after N - sum Gamma(rho) N^rho - log 2 pi decays like 1/N
    vals = [smooth_psi_residual(tab, small_zeros, N).residual * N for N in (100, 1000, 10**4)]
    assert max(vals) / min(vals) < 1.1
    assert 1.5 < vals[-1] < 2.5


def test_smooth_residual_over_N(tab, small_zeros):
    r = smooth_residual(tab, small_zeros, 10**4)
    assert r.residual / r.N == pytest.approx(-2 * LOG_2PI, abs=2e-3)
    assert r.extras["n_cut"] <= tab.n_max
