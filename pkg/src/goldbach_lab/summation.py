"""Compensated (Neumaier) summation kernels.

All reductions run sequentially in index order so results are bit-identical
from run to run.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _neumaier_sum(a):
    s = 0.0
    c = 0.0
    for i in range(a.shape[0]):
        x = a[i]
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


@njit(cache=True)
def _neumaier_cumsum(a, out):
    s = 0.0
    c = 0.0
    for i in range(a.shape[0]):
        x = a[i]
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out[i] = s + c
    return out


@njit(cache=True)
def _two_prod_dot(a, b):
    # Dekker split products plus Neumaier accumulation: each product enters exactly.
    split = 134217729.0
    s = 0.0
    c = 0.0
    for i in range(a.shape[0]):
        x = a[i]
        y = b[i]
        p = x * y
        t1 = split * x
        xh = t1 - (t1 - x)
        xl = x - xh
        t2 = split * y
        yh = t2 - (t2 - y)
        yl = y - yh
        e = ((xh * yh - p) + xh * yl + xl * yh) + xl * yl
        t = s + p
        if abs(s) >= abs(p):
            c += (s - t) + p
        else:
            c += (p - t) + s
        s = t
        c += e
    return s + c


def csum(values):
    """Compensated sum of a 1-d float array."""
    return float(_neumaier_sum(np.ascontiguousarray(values, dtype=np.float64)))


def ccumsum(values):
    """Compensated running sum; ``out[i] = sum(values[: i + 1])``."""
    a = np.ascontiguousarray(values, dtype=np.float64)
    return _neumaier_cumsum(a, np.empty_like(a))


def cdot(a, b):
    """Dot product with error-free products and compensated accumulation."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(_two_prod_dot(a, b))
