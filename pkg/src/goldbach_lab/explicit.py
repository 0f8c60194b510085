"""Truncated zero sums for the explicit formulas, a complex gamma kernel, and residual records.

Every zero is paired with its conjugate analytically: a sum over all rho with
0 < |gamma| <= T is returned as 2 * sum_{0<gamma<=T} Re(term), so the values are
real by construction. Sums run in ascending gamma with compensated accumulation.

Phases gamma * log x are formed in double precision after computing log x once;
the absolute phase error is about 1e-16 * gamma * log x, i.e. ~1e-10 rad for
gamma <= 1e5 and x <= 1e8. Beyond PHASE_LIMIT the sums refuse to run.
"""
import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from goldbach_lab.exceptions import CoverageError, DomainError
from goldbach_lab.goldbach import big_G, smooth_averages
from goldbach_lab.summation import csum

PHASE_LIMIT = 1e10
LOG_2PI = math.log(2.0 * math.pi)

# Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set, as used in Boost and CPython).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


@dataclass(frozen=True)
class ZeroSumResult:
    value: float
    T: float
    pairs_used: int
    tail_estimate: float


@dataclass(frozen=True)
class ResidualRecord:
    N: float
    truth: float
    formula: float
    residual: float
    envelope: float
    extras: dict = field(default_factory=dict, compare=False)


def complex_gamma(s):
    """Gamma(s) for complex s via the Lanczos approximation.

    Re(s) < 1/2 goes through the reflection formula. Relative error is about
    1e-14 on 0 <= Re(s) <= 2, |Im(s)| <= 40. Poles (s = 0, -1, -2, ...) raise
    DomainError.
    """
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        raise DomainError(f"Gamma has a pole at {s.real:g}")
    if s.real < 0.5:
        return math.pi / (cmath.sin(math.pi * s) * complex_gamma(1.0 - s))
    z = s - 1.0
    acc = _LANCZOS_C[0]
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return cmath.exp(_HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc))


def gamma_half_line_modulus(t):
    """|Gamma(1/2 + it)| = sqrt(pi / cosh(pi t)), in closed form."""
    t = np.asarray(t, dtype=np.float64)
    with np.errstate(over="ignore"):
        out = np.sqrt(np.pi / np.cosh(np.pi * t))
    return out if out.ndim else float(out)


def _phases(gammas, x):
    logx = math.log(x)
    if len(gammas) and gammas[-1] * abs(logx) > PHASE_LIMIT:
        raise DomainError(
            f"phase gamma*log x = {gammas[-1] * logx:.3g} exceeds {PHASE_LIMIT:g}; double precision too coarse"
        )
    return gammas * logx


def sum_rho(zeros, x, T):
    """sum over zeros with 0 < |gamma| <= T of x^rho / rho (beta = 1/2).

    tail_estimate is the truncation envelope shape x log x log log x / T
    (unit constant), not a rigorous bound.
    """
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    g = zeros.upto(T)
    th = _phases(g, x)
    # Re(e^{i th} / (1/2 + i g)) = (cos th / 2 + g sin th) / (1/4 + g^2)
    terms = (0.5 * np.cos(th) + g * np.sin(th)) / (0.25 + g * g)
    value = 2.0 * math.sqrt(x) * csum(terms)
    xe = max(x, 3.0)
    tail = xe * math.log(xe) * math.log(math.log(xe)) / T if T > 0 else math.inf
    return ZeroSumResult(value, float(T), len(g), tail)


def sum_rho1(zeros, N, T):
    """sum over zeros with 0 < |gamma| <= T of N^{rho+1} / (rho (rho + 1)).

    tail_estimate uses the mean zero density log(t/2pi)/(2pi):
    2 N^{3/2} int_T^inf log(t/2pi) / (2pi t^2) dt = 2 N^{3/2} (log(T/2pi) + 1) / (2pi T).
    """
    if not N > 0:
        raise DomainError(f"N must be positive, got {N}")
    g = zeros.upto(T)
    th = _phases(g, N)
    # rho (rho + 1) = (3/4 - g^2) + 2 i g
    a = 0.75 - g * g
    b = 2.0 * g
    terms = (a * np.cos(th) + b * np.sin(th)) / (a * a + b * b)
    n32 = N ** 1.5
    value = 2.0 * n32 * csum(terms)
    if T > 0:
        tail = 2.0 * n32 * (max(math.log(T / (2.0 * math.pi)), 0.0) + 1.0) / (2.0 * math.pi * T)
    else:
        tail = math.inf
    return ZeroSumResult(value, float(T), len(g), tail)


def _gamma_tail_bound(T, scale):
    # zeros per unit window taken as <= 2 log(t + 4); |Gamma(1/2+it)| <= sqrt(2 pi) e^{-pi t/2}
    k = np.arange(0, 200, dtype=np.float64)
    w = 2.0 * np.log(T + k + 4.0) * np.exp(-0.5 * math.pi * (T + k))
    return 2.0 * scale * math.sqrt(2.0 * math.pi) * float(w.sum())


def sum_gamma_rho(zeros, N, shift, rtol=1e-12, T=None):
    """sum over zeros of Gamma(rho) N^{rho + shift}, shift in {0, 1}.

    Without ``T`` the cutoff is adaptive: zeros are added in ascending order
    until the bound on the dropped tail falls below ``rtol`` times the size of
    the first term, |Gamma(rho_1)| N^{1/2+shift}. That needs T* ~ 30 and a
    handful of zeros. An explicitly empty table gives 0.
    """
    if shift not in (0, 1):
        raise DomainError(f"shift must be 0 or 1, got {shift}")
    if not N >= 1:
        raise DomainError(f"N must be >= 1, got {N}")
    scale = N ** (0.5 + shift)
    g_all = zeros.gammas
    if T is not None:
        g = zeros.upto(T)
        cutoff = float(T)
    elif len(g_all) == 0:
        g = g_all
        cutoff = 0.0
    else:
        target = rtol * gamma_half_line_modulus(g_all[0]) * scale
        k = 1
        while _gamma_tail_bound(g_all[k - 1], scale) >= target:
            k += 1
            if k > len(g_all):
                raise CoverageError(
                    f"zero table (max_gamma={zeros.max_gamma:g}) too short for adaptive Gamma cutoff"
                )
        g = g_all[:k]
        cutoff = float(g_all[k - 1])
    logn = math.log(N)
    parts = np.array(
        [(complex_gamma(complex(0.5, gm)) * cmath.exp(complex(0.5 + shift, gm) * logn)).real for gm in g]
    )
    value = 2.0 * csum(parts) if len(parts) else 0.0
    tail = _gamma_tail_bound(cutoff, scale)
    return ZeroSumResult(value, cutoff, len(g), tail)


def fujii_residual(table, zeros, N, T):
    """G(N) against N^2/2 - 2 sum_rho N^{rho+1}/(rho(rho+1)) truncated at T.

    envelope is N log^3 N; the weaker N^{4/3} (log N)^{4/3} shape is carried
    in ``extras``.
    """
    if N < 4:
        raise DomainError(f"N must be >= 4, got {N}")
    truth = big_G(table, N).G
    s = sum_rho1(zeros, N, T)
    formula = 0.5 * N * N - 2.0 * s.value
    logn = math.log(N)
    return ResidualRecord(
        N,
        truth,
        formula,
        truth - formula,
        N * logn**3,
        {"T": s.T, "pairs": s.pairs_used, "tail": 2.0 * s.tail_estimate,
         "envelope_43": N ** (4.0 / 3.0) * logn ** (4.0 / 3.0)},
    )


def psi_explicit_residual(table, zeros, x, T):
    """R(x) against -sum_{|gamma|<=T} x^rho/rho; envelope x log x log log x / T + log x."""
    if x < 3:
        raise DomainError(f"x must be >= 3, got {x}")
    table.check(x)
    truth = float(table.psi_prefix[x]) - x
    s = sum_rho(zeros, x, T)
    formula = -s.value
    lx = math.log(x)
    return ResidualRecord(
        x, truth, formula, truth - formula, x * lx * math.log(lx) / T + lx,
        {"T": s.T, "pairs": s.pairs_used},
    )


def smooth_psi_residual(table, zeros, N, eps=1e-6, rtol=1e-12):
    """Psi(N) against N - sum_rho Gamma(rho) N^rho - log 2pi; envelope 1/N."""
    sm = smooth_averages(table, N, eps)
    s = sum_gamma_rho(zeros, N, 0, rtol=rtol)
    formula = N - s.value - LOG_2PI
    return ResidualRecord(
        N, sm.PsiN, formula, sm.PsiN - formula, 1.0 / N,
        {"T": s.T, "pairs": s.pairs_used, "n_cut": sm.n_cut},
    )


def smooth_residual(table, zeros, N, eps=1e-6, rtol=1e-12):
    """F(N) against N^2 - 2 sum_rho Gamma(rho) N^{rho+1} + (Psi(N) - N)^2; envelope N.

    ``eps`` bounds the truncation of Psi(N) (absolute), so F carries at most
    ~2 N eps truncation error.
    """
    sm = smooth_averages(table, N, eps)
    s = sum_gamma_rho(zeros, N, 1, rtol=rtol)
    d = sm.PsiN - N
    formula = float(N) * N - 2.0 * s.value + d * d
    return ResidualRecord(
        N, sm.FN, formula, sm.FN - formula, float(N),
        {"T": s.T, "pairs": s.pairs_used, "n_cut": sm.n_cut},
    )
