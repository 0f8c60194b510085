import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_lab import AliasingError, CapacityError, DomainError
from goldbach_lab.circle import (
    CircleContext,
    arc_split,
    contour_integral,
    contour_psi20,
    eval_kernel,
    eval_psi_z,
    kernel_bound_constants,
    kernel_direct,
    kernel_values,
    one_minus_z_profile,
    parseval_check,
    psi_z_samples,
    unit_circle_selection,
)
from goldbach_lab.goldbach import psi20_sum
from goldbach_lab.sieve import build_lambda


@pytest.fixture(scope="module")
def tab():
    return build_lambda(40 * 200)


def test_context_defaults():
    c = CircleContext.make(10)
    assert c.n_cut == 400 and c.M > 2 * c.n_cut and c.M & (c.M - 1) == 0
    assert c.r == pytest.approx(math.exp(-0.1))
    with pytest.raises(AliasingError):
        CircleContext.make(10, M=800)
    with pytest.raises(DomainError):
        CircleContext.make(3)


def test_capacity(tab):
    with pytest.raises(CapacityError):
        psi_z_samples(tab, CircleContext.make(201))


@pytest.mark.parametrize("N, rel", [(10, 1e-12), (50, 1e-11), (200, 1e-10)])
def test_contour_matches_direct(tab, N, rel):
    ctx = CircleContext.make(N)
    direct = psi20_sum(tab, N)[0]
    assert contour_psi20(tab, ctx) == pytest.approx(direct, rel=rel)
    assert abs(contour_integral(tab, ctx).imag) <= 1e-9 * abs(direct)


def test_samples_match_pointwise(tab):
    ctx = CircleContext.make(10)
    P = psi_z_samples(tab, ctx)
    for j in (0, 1, 17, ctx.M // 2):
        assert P[j] == pytest.approx(eval_psi_z(tab, ctx, j / ctx.M), rel=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0), st.integers(min_value=4, max_value=60))
def test_kernel_closed_form(alpha, N):
    ctx = CircleContext.make(N)
    z = ctx.z(alpha)
    _, K = kernel_values(z, N)
    assert K == pytest.approx(kernel_direct(z, N), rel=1e-10)
    I, _ = eval_kernel(ctx, alpha)
    assert I == pytest.approx(z / (1 - z), rel=1e-12)


def test_parseval(tab):
    for N in (16, 100):
        lhs, rhs = parseval_check(tab, CircleContext.make(N))
        assert lhs == pytest.approx(rhs, rel=1e-12)
        assert rhs <= 3 * N * math.log(N)


def test_one_minus_z_identity():
    for N in (10, 100, 1000):
        prof = one_minus_z_profile(CircleContext.make(N, n_cut=N, M=4 * N))
        mod2 = prof[:, 1] ** 2
        # algebraic identity; residual is rounding of values up to 4
        assert np.all(np.abs(prof[:, 3]) <= 4 * np.finfo(float).eps * np.maximum(1.0, mod2))
        assert np.all(prof[:, 2] >= 0.9) and np.all(prof[:, 2] <= math.sqrt(1 + 4 * math.pi**2))
    with pytest.raises(DomainError):
        one_minus_z_profile(CircleContext.make(10), [0.7])


def test_unit_circle_selection():
    ctx = CircleContext.make(10, n_cut=10, M=64)
    assert unit_circle_selection(ctx, -1) == pytest.approx(1.0, abs=1e-14)
    for ell in (0, 1, 5, -3):
        assert abs(unit_circle_selection(ctx, ell)) <= 1e-12


def test_kernel_constants():
    for N in (10, 100, 1000):
        c1, c2, c = kernel_bound_constants(CircleContext.make(N, n_cut=N, M=4 * N))
        assert c1 <= 2.0
        # sup of |K| |1 - z| is 1 + e at alpha = 1/2
        assert c2 <= 1 + math.e + 1e-9
        assert c <= 1 + math.e + 1e-9


def test_arc_split(tab):
    ctx = CircleContext.make(50)
    delta, major, minor = arc_split(tab, ctx, lambda t: 0.5 * math.log(t), 2.0)
    assert 1 / 50 <= delta <= 0.25
    assert major > 0 and minor > 0
