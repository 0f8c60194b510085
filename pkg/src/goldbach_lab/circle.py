"""Generating functions on the circle |z| = e^{-1/N} and their quadrature checks.

Psi(z) = sum Lambda(n) z^n is truncated at n_cut (default 40 N, so the dropped
tail is below N e^{-40} (log n_cut + 1)). Integrals over alpha in [0, 1) use
the uniform M-point rule at alpha_j = j / M, which integrates a trigonometric
polynomial of degree < M exactly; all M samples of Psi come from one FFT.
"""
import math
from dataclasses import dataclass

import numpy as np

from goldbach_lab.exceptions import AliasingError, CapacityError, DomainError
from goldbach_lab.summation import csum
from goldbach_lab.zfr import balancing_delta


def _next_pow2(n):
    return 1 << (int(n) - 1).bit_length()


@dataclass(frozen=True)
class CircleContext:
    N: int
    n_cut: int
    M: int

    @classmethod
    def make(cls, N, n_cut=None, M=None):
        if N < 4:
            raise DomainError(f"N must be >= 4, got {N}")
        n_cut = 40 * N if n_cut is None else int(n_cut)
        if n_cut < N:
            raise DomainError(f"n_cut={n_cut} must be >= N={N}")
        M = 2 * _next_pow2(2 * n_cut) if M is None else int(M)
        if M <= 2 * n_cut:
            raise AliasingError(f"M={M} must exceed 2*n_cut={2 * n_cut}")
        return cls(N, n_cut, M)

    @property
    def r(self):
        return math.exp(-1.0 / self.N)

    @property
    def tail_bound(self):
        """Bound on sum_{n>n_cut} log(n) r^n, as for the smoothed Psi(N)."""
        return self.N * math.exp(-self.n_cut / self.N) * (math.log(self.n_cut) + 1.0)

    def z(self, alpha):
        return self.r * np.exp(2j * np.pi * np.asarray(alpha, dtype=np.float64))

    def nodes(self):
        return np.arange(self.M, dtype=np.float64) / self.M


def _coefficients(table, ctx, shift=0.0):
    if table.n_max < ctx.n_cut:
        raise CapacityError(f"table n_max={table.n_max} below n_cut={ctx.n_cut}")
    n = np.arange(ctx.n_cut + 1, dtype=np.float64)
    c = (table.lam[: ctx.n_cut + 1] - shift) * np.exp(-n / ctx.N)
    c[0] = 0.0
    return c


def _samples(coeffs, M):
    # sum_n c_n e^{2 pi i n j / M} for j = 0..M-1
    a = np.zeros(M, dtype=np.complex128)
    a[: len(coeffs)] = coeffs
    return np.fft.ifft(a) * M


def eval_psi_z(table, ctx, alpha):
    """Truncated Psi(r e^{2 pi i alpha}) = sum_{n<=n_cut} Lambda(n) r^n e^{2 pi i n alpha}."""
    c = _coefficients(table, ctx)
    n = np.arange(ctx.n_cut + 1, dtype=np.float64)
    ph = np.exp(2j * np.pi * n * alpha)
    return complex(csum((c * ph).real), csum((c * ph).imag))


def psi_z_samples(table, ctx):
    """Psi at every quadrature node alpha_j = j / M."""
    return _samples(_coefficients(table, ctx), ctx.M)


def kernel_values(z, N):
    """I(z) = z / (1 - z) and K_N(z) = z^{-N} (1 - z^N) / (1 - z), closed forms."""
    z = np.asarray(z, dtype=np.complex128)
    zN = z**N
    return z / (1.0 - z), (1.0 - zN) / (zN * (1.0 - z))


def eval_kernel(ctx, alpha):
    """(I(z), K_N(z)) at z = r e^{2 pi i alpha}."""
    I, K = kernel_values(ctx.z(alpha), ctx.N)
    if np.ndim(I) == 0:
        return complex(I), complex(K)
    return I, K


def kernel_direct(z, N):
    """K_N(z) = sum_{n<=N} z^{-n} summed term by term."""
    z = np.asarray(z, dtype=np.complex128)
    n = np.arange(1, N + 1)
    return (z[..., None] ** (-n)).sum(axis=-1)


def contour_integral(table, ctx):
    """M-point rule for (1/2 pi i) \\oint (Psi - I)^2 K_N dz / z; complex result."""
    P = psi_z_samples(table, ctx)
    I, K = kernel_values(ctx.z(ctx.nodes()), ctx.N)
    w = (P - I) ** 2 * K
    return complex(csum(w.real) / ctx.M, csum(w.imag) / ctx.M)


def contour_psi20(table, ctx):
    """sum_{n<=N} psi_2^0(n) recovered from the contour integral (real part)."""
    return contour_integral(table, ctx).real


def parseval_check(table, ctx):
    """(int_0^1 |sum (Lambda(n)-1) r^n e(n alpha)|^2 d alpha, sum (Lambda(n)-1)^2 r^{2n})."""
    b = _coefficients(table, ctx, shift=1.0)
    P = _samples(b, ctx.M)
    lhs = csum(P.real**2 + P.imag**2) / ctx.M
    rhs = csum(b * b)
    return lhs, rhs


def one_minus_z_profile(ctx, alphas=None):
    """Rows of (alpha, |1 - z|, |1 - z| / max(1/N, alpha), identity residual) for alpha in [0, 1/2]."""
    if alphas is None:
        alphas = np.linspace(0.0, 0.5, 1001)
    alphas = np.asarray(alphas, dtype=np.float64)
    if np.any(alphas < 0) or np.any(alphas > 0.5):
        raise DomainError("alpha grid must lie in [0, 1/2]")
    r = ctx.r
    th = 2.0 * np.pi * alphas
    mod2 = (1.0 - r * np.cos(th)) ** 2 + (r * np.sin(th)) ** 2
    mod = np.sqrt(mod2)
    ratio = mod / np.maximum(1.0 / ctx.N, alphas)
    ident = mod2 - (1.0 - r) ** 2 - 4.0 * r * np.sin(np.pi * alphas) ** 2
    return np.column_stack([alphas, mod, ratio, ident])


def kernel_bound_constants(ctx, alphas=None):
    """Fitted (c1, c2, c) in |K| <= c1 N, |K| <= c2/|1-z|, |K| <= c min(N, 1/|1-z|)."""
    if alphas is None:
        alphas = np.linspace(0.0, 0.5, 20001)
    _, K = kernel_values(ctx.z(alphas), ctx.N)
    k = np.abs(K)
    d = np.abs(1.0 - ctx.z(alphas))
    return (float((k / ctx.N).max()), float((k * d).max()),
            float((k / np.minimum(ctx.N, 1.0 / d)).max()))


def unit_circle_selection(ctx, ell):
    """M-point rule for (1/2 pi i) \\oint z^ell dz on |z| = r (1 at ell = -1, else 0)."""
    z = ctx.z(ctx.nodes())
    v = np.mean(z ** (ell + 1))
    return complex(v)


def arc_split(table, ctx, f, A):
    """Integral of |Psi - I|^2 |K_N| over [0, delta] and [delta, 1/2] at the balancing delta.

    delta is clamped to [1/N, 1/4]. Diagnostics only.
    """
    delta = min(max(balancing_delta(f, A, ctx.N), 1.0 / ctx.N), 0.25)
    P = psi_z_samples(table, ctx)
    alphas = ctx.nodes()
    I, K = kernel_values(ctx.z(alphas), ctx.N)
    g = np.abs(P - I) ** 2 * np.abs(K) / ctx.M
    half = alphas <= 0.5
    major = half & (alphas <= delta)
    minor = half & (alphas > delta)
    return delta, csum(g[major]), csum(g[minor])
