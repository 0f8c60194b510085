"""Von Mangoldt table with exact-order prefix sums for psi and psi_1.

``LambdaTable.lam[n]`` holds Lambda(n) for 0 <= n <= n_max (index 0 is a
zero pad so that arrays are indexed by n directly). ``psi_prefix[n]`` is
psi(n) and ``psi1_prefix[n]`` is psi_1(n) = sum_{m<=n} psi(m-1), both
accumulated with compensated summation.

psi and psi_1 are served at integer arguments only. Between integers
psi(t) = psi(floor t) and psi_1(t) = psi_1(n) + (t - n) psi(n) for
n = floor t.
"""
import math
import os
import struct
from dataclasses import dataclass, field

import numpy as np

from goldbach_lab.exceptions import CapacityError, DomainError, GoldbachLabError
from goldbach_lab.summation import ccumsum

# Three float64 arrays of length n_max + 1 are held per table (~24 bytes per n).
DEFAULT_MAX_N = 50_000_000
SEGMENT_SIZE = 1 << 20

CACHE_MAGIC = b"GLMB"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sHQ")


def max_n_limit():
    """Configured memory ceiling for ``n_max`` (env ``GOLDBACH_LAB_MAX_N``)."""
    return int(os.environ.get("GOLDBACH_LAB_MAX_N", DEFAULT_MAX_N))


@dataclass(frozen=True, eq=False)
class LambdaTable:
    n_max: int
    lam: np.ndarray = field(repr=False)
    psi_prefix: np.ndarray = field(repr=False)
    psi1_prefix: np.ndarray = field(repr=False)

    @classmethod
    def from_lambda(cls, lam):
        """Wrap a length ``n_max + 1`` array of Lambda values (``lam[0]`` ignored)."""
        lam = np.array(lam, dtype=np.float64)
        lam[0] = 0.0
        n_max = lam.shape[0] - 1
        if n_max < 1:
            raise CapacityError("n_max must be at least 1")
        psi_prefix = ccumsum(lam)
        # psi_1(n) = sum_{m=1}^{n} psi(m-1); psi_1(0) = 0
        psi1_prefix = np.zeros_like(psi_prefix)
        psi1_prefix[1:] = ccumsum(psi_prefix[:-1])
        for a in (lam, psi_prefix, psi1_prefix):
            a.setflags(write=False)
        return cls(n_max, lam, psi_prefix, psi1_prefix)

    def check(self, x, lo=0):
        if not lo <= x <= self.n_max:
            raise CapacityError(f"argument {x} outside table range [{lo}, {self.n_max}]")

    @property
    def prime_powers(self):
        """Ascending array of n <= n_max with Lambda(n) > 0."""
        return np.flatnonzero(self.lam > 0)

    def R_array(self):
        """R(u) = psi(u) - u for u = 0..n_max."""
        return self.psi_prefix - np.arange(self.n_max + 1, dtype=np.float64)

    def R1_array(self):
        """R_1(u) = psi_1(u) - u^2/2 for u = 0..n_max."""
        u = np.arange(self.n_max + 1, dtype=np.float64)
        return self.psi1_prefix - 0.5 * u * u


def _base_primes(limit):
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask)


def build_lambda(n_max, segment_size=SEGMENT_SIZE, max_n=None):
    """Build Lambda(n) for n <= n_max with a segmented sieve of Eratosthenes.

    Primes are found segment by segment using base primes up to sqrt(n_max);
    higher prime powers p^k (k >= 2) are then filled in from the base primes.
    Output does not depend on ``segment_size``.
    """
    n_max = int(n_max)
    limit = max_n_limit() if max_n is None else max_n
    if n_max < 1:
        raise CapacityError(f"n_max must be >= 1, got {n_max}")
    if n_max > limit:
        raise CapacityError(
            f"n_max={n_max} exceeds memory budget {limit} (set GOLDBACH_LAB_MAX_N to raise it)"
        )
    lam = np.zeros(n_max + 1, dtype=np.float64)
    base = _base_primes(math.isqrt(n_max))

    lo = 2
    while lo <= n_max:
        hi = min(lo + segment_size, n_max + 1)
        seg = np.ones(hi - lo, dtype=bool)
        for p in base:
            p = int(p)
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            seg[start - lo :: p] = False
        idx = np.flatnonzero(seg) + lo
        lam[idx] = np.log(idx.astype(np.float64))
        lo = hi

    for p in base:
        p = int(p)
        logp = lam[p]
        q = p * p
        while q <= n_max:
            lam[q] = logp
            q *= p
    return LambdaTable.from_lambda(lam)


def psi(table, x):
    """Chebyshev psi(x) = sum_{n<=x} Lambda(n) at an integer x."""
    table.check(x)
    return float(table.psi_prefix[x])


def psi1(table, N):
    """psi_1(N) = sum_{n<=N} (N - n) Lambda(n) at an integer N."""
    table.check(N)
    return float(table.psi1_prefix[N])


def remainder(table, x):
    """Return ``(R(x), R_1(x))`` with R = psi(x) - x and R_1 = psi_1(x) - x^2/2."""
    table.check(x)
    return float(table.psi_prefix[x]) - x, float(table.psi1_prefix[x]) - 0.5 * x * x


def max_abs_R(table, lo, hi):
    """sup of |R(t)| = |psi(t) - t| over real t in [lo, hi].

    R has slope -1 on each [u, u+1) and jumps up at prime powers, so the sup is
    attained either at an integer or just before the next integer, where
    R(t) -> psi(u) - (u + 1). Both values are checked for every u in
    [lo, hi - 1]; at u = hi only the integer value counts.
    """
    if lo > hi:
        raise DomainError(f"empty range [{lo}, {hi}]")
    table.check(lo)
    table.check(hi)
    u = np.arange(lo, hi + 1, dtype=np.float64)
    p = table.psi_prefix[lo : hi + 1]
    at_int = np.abs(p - u).max()
    if hi == lo:
        return float(at_int)
    before_next = np.abs(p[:-1] - (u[:-1] + 1.0)).max()
    return float(max(at_int, before_next))


def save_cache(table, path):
    """Write the table in the GLMB little-endian binary format."""
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, table.n_max))
        fh.write(np.ascontiguousarray(table.lam[1:], dtype="<f8").tobytes())


def load_cache(path, n_max=None):
    """Read a GLMB cache; ``n_max`` (if given) must match the stored value."""
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise GoldbachLabError(f"{path}: truncated header")
        magic, version, stored = _HEADER.unpack(head)
        if magic != CACHE_MAGIC:
            raise GoldbachLabError(f"{path}: bad magic {magic!r}")
        if version != CACHE_VERSION:
            raise GoldbachLabError(f"{path}: unsupported version {version}")
        if n_max is not None and stored != n_max:
            raise GoldbachLabError(f"{path}: cached n_max={stored}, wanted {n_max}")
        body = fh.read()
    if len(body) != 8 * stored:
        raise GoldbachLabError(f"{path}: expected {8 * stored} payload bytes, found {len(body)}")
    lam = np.empty(stored + 1, dtype=np.float64)
    lam[0] = 0.0
    lam[1:] = np.frombuffer(body, dtype="<f8")
    return LambdaTable.from_lambda(lam)


def cached_table(n_max, cache_path=None):
    """Load ``cache_path`` when it holds exactly ``n_max``; otherwise build and write it."""
    if cache_path is not None and os.path.exists(cache_path):
        try:
            return load_cache(cache_path, n_max)
        except GoldbachLabError:
            pass
    table = build_lambda(n_max)
    if cache_path is not None:
        os.makedirs(os.path.dirname(os.path.abspath(cache_path)), exist_ok=True)
        save_cache(table, cache_path)
    return table
