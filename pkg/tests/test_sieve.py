import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_lab import CapacityError, DomainError
from goldbach_lab.sieve import (
    GoldbachLabError,
    build_lambda,
    cached_table,
    load_cache,
    max_abs_R,
    psi,
    psi1,
    remainder,
    save_cache,
)


def lam_trial(n):
    """Lambda(n) by trial factorisation."""
    if n < 2:
        return 0.0
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return math.log(p) if n == 1 else 0.0
    return math.log(n)


def test_lambda_against_trial_division(table_small):
    ref = np.array([lam_trial(n) for n in range(5001)])
    assert np.array_equal(table_small.lam[:5001] > 0, ref > 0)
    assert np.max(np.abs(table_small.lam[:5001] - ref)) <= 1e-15 * math.log(5000)


def test_psi_is_log_lcm(table_small):
    # psi(n) = log lcm(1..n)
    L = 1
    for n in range(1, 3001):
        L = math.lcm(L, n)
        if n % 97 == 0 or n <= 20:
            assert psi(table_small, n) == pytest.approx(math.log(L), rel=1e-14, abs=1e-14)


def test_small_values(table_small):
    assert psi(table_small, 10) == pytest.approx(math.log(2520), rel=1e-15)
    # psi_1(10) = sum_{n<=10} (10 - n) Lambda(n)
    expected = sum((10 - n) * lam_trial(n) for n in range(1, 11))
    assert psi1(table_small, 10) == pytest.approx(expected, rel=1e-14)
    R, R1 = remainder(table_small, 10)
    assert R == pytest.approx(math.log(2520) - 10, rel=1e-14)
    assert R1 == pytest.approx(expected - 50, rel=1e-14)


def test_max_abs_R_small_range(table_small):
    # R has slope -1 between jumps; the sup on [0, 10] is approached at t -> 7 from below
    assert max_abs_R(table_small, 0, 10) == pytest.approx(7 - math.log(60), rel=1e-14)


def test_max_abs_R_brute_force(table_small):
    t = np.linspace(0, 200, 400_001)
    psi_t = table_small.psi_prefix[np.floor(t).astype(int)]
    brute = np.abs(psi_t - t).max()
    assert max_abs_R(table_small, 0, 200) >= brute - 1e-12
    assert max_abs_R(table_small, 0, 200) <= brute + 200 / 400_000 + 1e-12


def test_max_abs_R_empty_range(table_small):
    with pytest.raises(DomainError):
        max_abs_R(table_small, 10, 5)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=2, max_value=5000), st.integers(min_value=7, max_value=700))
def test_segmentation_independent(n, seg):
    a = build_lambda(n, segment_size=seg)
    b = build_lambda(n)
    assert np.array_equal(a.lam, b.lam)


def test_psi1_is_weighted_sum(table_small):
    n = np.arange(0, 1001)
    for N in (1, 2, 17, 500, 1000):
        ref = math.fsum(((N - n[1 : N + 1]) * table_small.lam[1 : N + 1]).tolist())
        assert psi1(table_small, N) == pytest.approx(ref, rel=1e-13)


def test_capacity_errors(table_small):
    with pytest.raises(CapacityError):
        build_lambda(0)
    with pytest.raises(CapacityError):
        build_lambda(1000, max_n=999)
    with pytest.raises(CapacityError):
        psi(table_small, table_small.n_max + 1)
    with pytest.raises(ValueError):
        psi(table_small, -1)


def test_env_budget(monkeypatch):
    monkeypatch.setenv("GOLDBACH_LAB_MAX_N", "100")
    with pytest.raises(CapacityError, match="GOLDBACH_LAB_MAX_N"):
        build_lambda(101)


def test_arrays_read_only(table_small):
    with pytest.raises(ValueError):
        table_small.lam[5] = 1.0


def test_cache_round_trip(tmp_path):
    t = build_lambda(1234)
    path = tmp_path / "c.glmb"
    save_cache(t, path)
    u = load_cache(path, 1234)
    assert np.array_equal(t.lam, u.lam)
    assert np.array_equal(t.psi1_prefix, u.psi1_prefix)
    with pytest.raises(GoldbachLabError):
        load_cache(path, 1000)


def test_cache_rejects_corruption(tmp_path):
    path = tmp_path / "c.glmb"
    save_cache(build_lambda(100), path)
    raw = path.read_bytes()
    (tmp_path / "bad_magic").write_bytes(b"XXXX" + raw[4:])
    (tmp_path / "short").write_bytes(raw[:-8])
    for name in ("bad_magic", "short"):
        with pytest.raises(GoldbachLabError):
            load_cache(tmp_path / name)


def test_cached_table_rebuilds_on_mismatch(tmp_path):
    path = str(tmp_path / "sub" / "t.glmb")
    a = cached_table(500, path)
    b = cached_table(600, path)  # different n_max: rebuilt and overwritten
    assert b.n_max == 600 and a.n_max == 500
    assert load_cache(path).n_max == 600
