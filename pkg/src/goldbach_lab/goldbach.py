"""psi_2(n), the summatory average G(N), the Lambda_0 sums and the smoothed averages.

psi_2(n) = sum_{m+m'=n} Lambda(m) Lambda(m') and G(N) = sum_{n<=N} psi_2(n).
G itself is served in O(N) through the interchange
G(N) = sum_{m<N} Lambda(m) psi(N - m); psi_2 is materialised only when a test
or experiment needs individual values.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from goldbach_lab.exceptions import CapacityError, DomainError
from goldbach_lab.summation import ccumsum, cdot, csum

# Largest real FFT length we are willing to allocate (float64 workspace).
MAX_FFT_LENGTH = 1 << 28
DIRECT_LIMIT = 20_000


@dataclass(frozen=True, eq=False)
class Psi2Series:
    n_max: int
    values: np.ndarray = field(repr=False)
    backend: str

    def G_prefix(self):
        """Running G(n) for n = 0..n_max (compensated)."""
        return ccumsum(self.values)


@dataclass(frozen=True)
class GoldbachSummary:
    N: int
    G: float
    E: float


@dataclass(frozen=True)
class SmoothAverages:
    N: int
    n_cut: int
    PsiN: float
    FN: float
    tail_bound: float


def _check_size(table, n_max):
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    if n_max > table.n_max:
        raise CapacityError(f"n_max={n_max} exceeds table n_max={table.n_max}")


def psi2_direct(table, n_max):
    """psi_2(n) for n <= n_max by looping over prime-power pairs only (O(P^2))."""
    _check_size(table, n_max)
    lam = table.lam[: n_max + 1]
    pp = np.flatnonzero(lam > 0)
    w = lam[pp]
    values = np.zeros(n_max + 1, dtype=np.float64)
    for m, lm in zip(pp, w):
        k = np.searchsorted(pp, n_max - m, side="right")
        if k == 0:
            break
        values[m + pp[:k]] += lm * w[:k]
    return Psi2Series(n_max, values, "direct")


def psi2_fft(table, n_max):
    """psi_2 via a real FFT self-convolution of the Lambda array.

    Floating transforms leave O(eps * sum Lambda^2) noise per entry; entries with
    n < 4 are set to their exact value 0 and tiny negative values are clipped
    since psi_2 >= 0.
    """
    _check_size(table, n_max)
    length = 1 << (2 * n_max + 1).bit_length()
    if length > MAX_FFT_LENGTH:
        raise CapacityError(f"transform length {length} exceeds limit {MAX_FFT_LENGTH}")
    a = np.zeros(length, dtype=np.float64)
    a[: n_max + 1] = table.lam[: n_max + 1]
    spec = np.fft.rfft(a)
    conv = np.fft.irfft(spec * spec, n=length)[: n_max + 1]
    conv[: min(4, n_max + 1)] = 0.0
    np.maximum(conv, 0.0, out=conv)
    return Psi2Series(n_max, conv, "fft")


def psi2(table, n_max):
    """Materialise psi_2 with the direct backend for small sizes, FFT beyond."""
    if n_max <= DIRECT_LIMIT:
        return psi2_direct(table, n_max)
    return psi2_fft(table, n_max)


def big_G(table, N):
    """G(N) = sum_{m<N} Lambda(m) psi(N - m) and E(N) = G(N) - N^2/2."""
    if N < 0:
        raise DomainError(f"N must be >= 0, got {N}")
    table.check(N)
    if N < 4:
        G = 0.0
    else:
        # m = 1..N-1 paired with psi(N-1), ..., psi(1)
        G = cdot(table.lam[1:N], table.psi_prefix[N - 1 : 0 : -1])
    return GoldbachSummary(N, G, G - 0.5 * N * N)


def psi20_definition_prefix(table, series):
    """sum_{n<=N} psi_2^0(n) for every N <= series.n_max, from materialised psi_2.

    Uses psi_2^0(n) = psi_2(n) - 2 psi(n-1) + (n-1).
    """
    n = series.n_max
    terms = np.zeros(n + 1, dtype=np.float64)
    k = np.arange(1, n + 1, dtype=np.float64)
    terms[1:] = series.values[1:] - 2.0 * table.psi_prefix[:n] + (k - 1.0)
    return ccumsum(terms)


def psi20_via_remainder(table, N):
    """sum_{m<=N} Lambda_0(m) R(N - m) with Lambda_0(m) = Lambda(m) - 1 for m >= 1."""
    table.check(N)
    lam0 = table.lam[1 : N + 1] - 1.0
    u = np.arange(N - 1, -1, -1, dtype=np.float64)
    R = table.psi_prefix[N - 1 :: -1] - u if N > 0 else np.zeros(0)
    return cdot(lam0, R)


def psi20_sum(table, N, series=None):
    """Both routes to sum_{n<=N} psi_2^0(n): ``(via_definition, via_remainder)``.

    ``series`` may be a precomputed Psi2Series covering N; otherwise one is built.
    """
    if N < 4:
        raise DomainError(f"N must be >= 4, got {N}")
    table.check(N)
    if series is None or series.n_max < N:
        series = psi2(table, N)
    n = np.arange(1, N + 1, dtype=np.float64)
    terms = series.values[1 : N + 1] - 2.0 * table.psi_prefix[:N] + (n - 1.0)
    return csum(terms), psi20_via_remainder(table, N)


def lemma1_identity_rhs(table, N, psi20_total):
    """2 psi_1(N) - N(N-1)/2 + sum psi_2^0, which equals G(N) exactly."""
    return 2.0 * float(table.psi1_prefix[N]) - 0.5 * N * (N - 1) + psi20_total


def smooth_cutoff(N, eps):
    """Smallest n_cut >= N with (log n_cut + 1) N exp(-n_cut/N) < eps.

    For n > n_cut >= N the summand log(n) exp(-n/N) is decreasing, so
    sum_{n>n_cut} Lambda(n) e^{-n/N} <= int_{n_cut}^inf log t e^{-t/N} dt
    <= N e^{-n_cut/N} (log n_cut + 1); that last quantity is the tail bound.
    """
    if N < 3:
        raise DomainError(f"N must be >= 3, got {N}")
    if not eps > 0:
        raise DomainError(f"eps must be positive, got {eps}")

    def bound(n):
        return (math.log(n) + 1.0) * N * math.exp(-n / N)

    n = float(N)
    for _ in range(50):
        nxt = N * math.log(max((math.log(n) + 1.0) * N / eps, 1.0))
        nxt = max(nxt, float(N))
        if abs(nxt - n) < 0.5:
            n = nxt
            break
        n = nxt
    n_cut = max(int(math.ceil(n)), N)
    while bound(n_cut) >= eps:
        n_cut += 1
    while n_cut - 1 >= N and bound(n_cut - 1) < eps:
        n_cut -= 1
    return n_cut, bound(n_cut)


def smooth_averages(table, N, eps=None):
    """Psi(N) = sum Lambda(n) e^{-n/N} truncated at n_cut, and F(N) = Psi(N)^2.

    Default ``eps`` is 1e-9 N^2; tail_bound < eps.
    """
    if eps is None:
        eps = 1e-9 * N * N
    n_cut, tail = smooth_cutoff(N, eps)
    if n_cut > table.n_max:
        raise CapacityError(
            f"smooth average at N={N}, eps={eps:g} needs n_cut={n_cut} > table n_max={table.n_max}"
        )
    n = np.arange(1, n_cut + 1, dtype=np.float64)
    PsiN = csum(table.lam[1 : n_cut + 1] * np.exp(-n / N))
    return SmoothAverages(N, n_cut, PsiN, PsiN * PsiN, tail)


def smooth_F_direct(series, N, n_cut):
    """sum_{n<=n_cut} psi_2(n) e^{-n/N} straight from materialised psi_2."""
    if n_cut > series.n_max:
        raise CapacityError(f"n_cut={n_cut} exceeds series n_max={series.n_max}")
    n = np.arange(0, n_cut + 1, dtype=np.float64)
    return csum(series.values[: n_cut + 1] * np.exp(-n / N))


def lemma1_remainder(table, N):
    """(G(N) - N^2/2 - 2 R_1(N) - sum Lambda_0(m) R(N - m)) / N.

    Algebraically this is exactly 1/2; the computed value shows how much
    rounding the three routes accumulate.
    """
    if N < 4:
        raise DomainError(f"N must be >= 4, got {N}")
    G = big_G(table, N).G
    R1 = float(table.psi1_prefix[N]) - 0.5 * N * N
    return (G - 0.5 * N * N - 2.0 * R1 - psi20_via_remainder(table, N)) / N
