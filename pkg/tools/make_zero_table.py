#!/usr/bin/env python3
"""Generate a test fixture of zeta-zero ordinates (dev tooling, not part of the package).

The package only ingests zero tables. This script exists because the test
suite needs a plain-ASCII file of the first 10^5 ordinates and no such
table ships with the environment.

Zeros are located as sign changes of the Hardy Z-function on a grid, using a
vectorised Riemann-Siegel main sum with the first correction term, then polished
with brentq on mpmath.fp.siegelz. Close pairs that the grid misses are caught by
scanning local minima of |Z| on a finer grid. The final count is checked
against the known height of the 100000th zero.

    python tools/make_zero_table.py --count 100000 --out tests/data/zeros_100k.txt.gz
"""
import argparse
import gzip
import math
import sys
import time

import mpmath
import numpy as np
from scipy.optimize import brentq

TWO_PI = 2.0 * math.pi
# Height of the 100000th nontrivial zero (published zero tables).
GAMMA_100000 = 74920.827498994


def theta(t):
    t = np.asarray(t, dtype=float)
    return 0.5 * t * np.log(t / TWO_PI) - 0.5 * t - math.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3)


def z_approx(t):
    """Riemann-Siegel Z(t) with the C0 correction; vectorised over t."""
    t = np.asarray(t, dtype=float)
    a = np.sqrt(t / TWO_PI)
    m = np.floor(a).astype(np.int64)
    p = a - m
    th = theta(t)
    mmax = int(m.max())
    n = np.arange(1, mmax + 1, dtype=float)
    phase = th[:, None] - t[:, None] * np.log(n)[None, :]
    terms = np.cos(phase) / np.sqrt(n)[None, :]
    terms[n[None, :] > m[:, None]] = 0.0
    main = 2.0 * terms.sum(axis=1)
    den = np.cos(TWO_PI * p)
    den = np.where(np.abs(den) < 1e-9, 1e-9, den)
    c0 = np.cos(TWO_PI * (p * p - p - 1.0 / 16.0)) / den
    sign = np.where((m - 1) % 2 == 0, 1.0, -1.0)
    return main + sign * a ** -0.5 * c0


def z_grid(lo, hi, chunk=20000):
    ts, zs = [], []
    t = lo
    while t < hi:
        step = TWO_PI / math.log(max(t, 20.0) / TWO_PI) / 40.0
        block = t + step * np.arange(chunk)
        block = block[block <= hi]
        ts.append(block)
        zs.append(z_approx(block))
        t = block[-1] + step
    return np.concatenate(ts), np.concatenate(zs)


def brackets(t, z):
    idx = np.flatnonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)
    out = [(t[i], t[i + 1]) for i in idx]
    # local minima of |Z| without a sign change: possible close pair
    az = np.abs(z)
    cand = np.flatnonzero((az[1:-1] < az[:-2]) & (az[1:-1] < az[2:]) &
                          (np.sign(z[:-2]) == np.sign(z[2:])) & (np.sign(z[1:-1]) == np.sign(z[2:]))) + 1
    extra = 0
    for i in cand:
        fine = np.linspace(t[i - 1], t[i + 1], 2001)
        zf = z_approx(fine)
        j = np.flatnonzero(np.sign(zf[:-1]) * np.sign(zf[1:]) < 0)
        if len(j) == 0 and np.abs(zf).min() < 0.02:
            k0 = int(np.argmin(np.abs(zf)))
            fine = np.linspace(fine[max(k0 - 20, 0)], fine[min(k0 + 20, 2000)], 101)
            zf = np.array([mpmath.fp.siegelz(x) for x in fine])
            j = np.flatnonzero(np.sign(zf[:-1]) * np.sign(zf[1:]) < 0)
        for k in j:
            out.append((fine[k], fine[k + 1]))
            extra += 1
    out.sort()
    return out, extra


def polish(lo, hi):
    f = mpmath.fp.siegelz
    flo, fhi = f(lo), f(hi)
    if flo * fhi > 0:
        # approximate Z put the bracket slightly off; widen
        w = hi - lo
        for k in range(1, 40):
            a, b = lo - k * w, hi + k * w
            fa, fb = f(a), f(b)
            if fa * fb < 0:
                lo, hi = a, b
                break
        else:
            raise RuntimeError(f"cannot bracket zero near {lo}")
    return brentq(f, lo, hi, xtol=1e-11, rtol=1e-15, maxiter=200)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100000)
    ap.add_argument("--out", required=True)
    args = ap.parse_args(argv)

    hi = GAMMA_100000 + 0.05 if args.count == 100000 else None
    if hi is None:
        # rough inverse of N(T); one extra unit of height for safety
        hi = 20.0
        while theta(np.array([hi]))[0] / math.pi + 1 < args.count + 2:
            hi *= 1.01
    t0 = time.time()
    t, z = z_grid(10.0, hi)
    br, extra = brackets(t, z)
    print(f"grid {len(t)} pts, {len(br)} brackets ({extra} from close pairs), {time.time()-t0:.1f}s", file=sys.stderr)
    roots = []
    for k, (a, b) in enumerate(br):
        roots.append(polish(a, b))
        if k % 5000 == 0:
            print(f"  {k} {roots[-1]:.9f} {time.time()-t0:.0f}s", file=sys.stderr)
    roots = np.unique(np.round(np.array(roots), 10))
    roots = roots[: args.count]
    if len(roots) < args.count:
        raise SystemExit(f"only {len(roots)} zeros found")
    if args.count == 100000 and abs(roots[-1] - GAMMA_100000) > 1e-6:
        raise SystemExit(f"count check failed: last zero {roots[-1]!r}")
    if np.any(np.diff(roots) <= 0):
        raise SystemExit("non-increasing output")
    opener = gzip.open if args.out.endswith(".gz") else open
    with opener(args.out, "wt") as fh:
        for g in roots:
            fh.write(f"{g:.9f}\n")
    print(f"wrote {len(roots)} zeros, last {roots[-1]:.9f}, {time.time()-t0:.0f}s", file=sys.stderr)


if __name__ == "__main__":
    main()
