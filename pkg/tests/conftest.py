import os

import pytest

from goldbach_lab.sieve import build_lambda
from goldbach_lab.zeros import load_zeros

DATA = os.path.join(os.path.dirname(__file__), "data")
SMALL_ZEROS = os.path.join(DATA, "zeros_2k.txt")
BIG_ZEROS = os.path.join(DATA, "zeros_100k.txt.gz")


@pytest.fixture(scope="session")
def table_small():
    return build_lambda(50_000)


@pytest.fixture(scope="session")
def table_1e6():
    return build_lambda(1_000_000)


@pytest.fixture(scope="session")
def small_zeros():
    return load_zeros(SMALL_ZEROS)


@pytest.fixture(scope="session")
def big_zeros():
    if not os.path.exists(BIG_ZEROS):
        pytest.fail(f"missing fixture {BIG_ZEROS}; regenerate with tools/make_zero_table.py")
    return load_zeros(BIG_ZEROS)


ACCEPTANCE = {}


def record(number, ok, detail):
    """Store one acceptance verdict for the end-of-run summary."""
    ACCEPTANCE[number] = (bool(ok), detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
