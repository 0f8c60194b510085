import gzip
import math

import mpmath
import numpy as np
import pytest

from goldbach_lab import CoverageError, DomainError, ZeroTableParseError
from goldbach_lab.zeros import (
    FIRST_ORDINATE,
    ZeroTable,
    count_in_window,
    load_zeros,
    window_constant,
)

from conftest import SMALL_ZEROS


def test_fixture_against_mpmath(small_zeros):
    assert len(small_zeros) == 2000
    for k in (1, 2, 10, 100, 777, 2000):
        ref = float(mpmath.zetazero(k).imag)
        assert small_zeros.gammas[k - 1] == pytest.approx(ref, abs=2e-9)
    assert small_zeros.gammas[0] == pytest.approx(FIRST_ORDINATE, abs=1e-9)


def test_limits():
    t = load_zeros(SMALL_ZEROS, max_gamma=100.0)
    assert len(t) == 29 and t.max_gamma == 100.0
    t = load_zeros(SMALL_ZEROS, max_zeros=10)
    assert len(t) == 10 and t.max_gamma == t.gammas[-1]
    # height beyond the file: coverage is the last ordinate read
    t = load_zeros(SMALL_ZEROS, max_gamma=1e6)
    assert t.max_gamma == t.gammas[-1]


def test_gzip_and_comments(tmp_path):
    p = tmp_path / "z.txt.gz"
    with gzip.open(p, "wt") as fh:
        fh.write("# header\n\n14.134725142\n  21.022039639  \n")
    t = load_zeros(p)
    assert len(t) == 2


@pytest.mark.parametrize(
    "body, line",
    [("14.1\nabc\n", 2), ("14.1\n-3\n", 2), ("14.1\n21.0\n20.0\n", 3), ("0\n", 1), ("nan\n", 1)],
)
def test_parse_errors_carry_line(tmp_path, body, line):
    p = tmp_path / "bad.txt"
    p.write_text(body)
    with pytest.raises(ZeroTableParseError) as ei:
        load_zeros(p)
    assert ei.value.line == line
    assert f":{line}:" in str(ei.value)


def test_empty_file(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("# nothing\n")
    with pytest.raises(ZeroTableParseError):
        load_zeros(p)


def test_bad_limits():
    with pytest.raises(DomainError):
        load_zeros(SMALL_ZEROS, max_gamma=-1)
    with pytest.raises(DomainError):
        load_zeros(SMALL_ZEROS, max_zeros=0)


def test_upto_and_truncated(small_zeros):
    assert len(small_zeros.upto(50.0)) == 10
    t = small_zeros.truncated(50.0)
    assert t.max_gamma == 50.0 and len(t) == 10
    with pytest.raises(CoverageError):
        small_zeros.upto(small_zeros.max_gamma + 1)


def test_count_in_window(small_zeros):
    assert count_in_window(small_zeros, 14.0) == 1
    assert count_in_window(small_zeros, 0.0) == 0
    g = small_zeros.gammas
    T = 1000.0
    assert count_in_window(small_zeros, T) == int(np.sum((g > T) & (g <= T + 1)))
    with pytest.raises(CoverageError):
        count_in_window(small_zeros, small_zeros.max_gamma)


def test_window_constant_is_modest(small_zeros):
    # N(T+1) - N(T) = O(log T); the fitted constant should be a small number
    c = window_constant(small_zeros, np.arange(0, 2500, 1.0))
    assert 0 < c < 2


def test_riemann_von_mangoldt_count(small_zeros):
    # N(T) = theta(T)/pi + 1 + S(T), |S(T)| small at these heights
    T = 2000.0
    n = len(small_zeros.upto(T))
    main = float(mpmath.siegeltheta(T)) / math.pi + 1
    assert abs(n - main) < 3


def test_table_validation():
    with pytest.raises(ValueError):
        ZeroTable.from_ordinates([20.0, 14.0])


def test_large_fixture_spot_checks(big_zeros):
    assert len(big_zeros) == 100_000
    assert np.all(np.diff(big_zeros.gammas) > 0)
    for k in (12_345, 100_000):
        assert big_zeros.gammas[k - 1] == pytest.approx(float(mpmath.zetazero(k).imag), abs=1e-9)
