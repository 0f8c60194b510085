import math
from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from goldbach_lab.summation import ccumsum, cdot, csum

finite = st.floats(min_value=-1e12, max_value=1e12, allow_nan=False, allow_infinity=False)


def test_cancellation_recovered():
    vals = np.array([1e16, 1.0, -1e16, 1.0])
    assert csum(vals) == 2.0


def close_to_exact(got, xs):
    # compensated sums: one rounding of the result plus a second-order term
    exact = math.fsum(xs)
    eps = 2.0**-53
    bound = 2 * eps * abs(exact) + len(xs) * eps * eps * math.fsum(map(abs, xs))
    return abs(got - exact) <= bound


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, min_size=1, max_size=60))
def test_csum_close_to_fsum(xs):
    assert close_to_exact(csum(np.array(xs)), xs)


@settings(max_examples=100, deadline=None)
@given(st.lists(finite, min_size=1, max_size=40))
def test_ccumsum_prefixes(xs):
    out = ccumsum(np.array(xs))
    for k in range(len(xs)):
        assert close_to_exact(out[k], xs[: k + 1])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(finite, finite), min_size=1, max_size=40))
def test_cdot_close_to_exact(pairs):
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    exact = sum(Fraction(x) * Fraction(y) for x, y in pairs)
    scale = float(np.sum(np.abs(a * b))) or 1.0
    assert abs(cdot(a, b) - float(exact)) <= 4e-16 * scale
