"""Zero-free-region functions eta(u), the transfer minimisers omega/varpi, and bound shapes.

    omega(x) = min_{u>=1} (eta(u) log x + log u)
    varpi(x) = min_{u>=0} (eta(u) log x + u)

Both are minimised numerically: a coarse scan picks the basin, golden-section
search refines it. The log-power family is capped at 1/2 near u = 0, where the
raw expression exceeds the admissible range; the capped objective can have a
second basin at the left end, which is why the coarse scan is not optional.
Tabulated eta gets an exhaustive grid scan only.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from goldbach_lab.exceptions import DomainError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
AUDIT_POINTS = 10_000
COARSE_POINTS = 257


@dataclass(frozen=True, eq=False)
class EtaFamily:
    kind: str
    theta: float = 0.5
    c: float = 1.0
    a: float = 0.0
    b: float = 0.0
    cap: float = 0.5
    u_tab: Optional[np.ndarray] = field(default=None, repr=False)
    eta_tab: Optional[np.ndarray] = field(default=None, repr=False)

    @classmethod
    def constant(cls, theta):
        if not 0.0 < theta <= 0.5:
            raise DomainError(f"constant eta must lie in (0, 1/2], got {theta}")
        return cls("constant", theta=float(theta))

    @classmethod
    def logpower(cls, c, a, b=0.0):
        """eta(u) = min(1/2, c / (log(u+3))^a (log log(u+3))^b)."""
        if not c > 0:
            raise DomainError(f"c must be positive, got {c}")
        if not 0.0 <= a <= 1.0:
            raise DomainError(f"a must lie in [0, 1], got {a}")
        if a == 0.0 and b < 0.0:
            raise DomainError("b must be >= 0 when a = 0")
        return cls("logpower", c=float(c), a=float(a), b=float(b))

    @classmethod
    def tabulated(cls, u, eta):
        u = np.asarray(u, dtype=np.float64)
        eta = np.asarray(eta, dtype=np.float64)
        if u.ndim != 1 or u.shape != eta.shape or len(u) < 2:
            raise DomainError("tabulated eta needs two equal-length columns with at least 2 rows")
        if np.any(np.diff(u) <= 0):
            raise DomainError("tabulated u must be strictly increasing")
        if u[0] > 0:
            raise DomainError("tabulated eta must start at u = 0")
        if np.any(np.diff(eta) > 0):
            raise DomainError("tabulated eta must be non-increasing")
        if np.any(eta <= 0) or np.any(eta > 0.5):
            raise DomainError("tabulated eta must satisfy 0 < eta <= 1/2")
        return cls("table", u_tab=u, eta_tab=eta)

    @classmethod
    def parse(cls, spec):
        """``constant:0.5``, ``logpower:c,a,b`` or ``table:<path>`` (two columns u, eta)."""
        kind, _, rest = spec.partition(":")
        if kind == "constant":
            return cls.constant(float(rest))
        if kind == "logpower":
            parts = [float(p) for p in rest.split(",")]
            if len(parts) not in (2, 3):
                raise DomainError(f"logpower needs c,a[,b], got {rest!r}")
            return cls.logpower(*parts)
        if kind == "table":
            data = np.loadtxt(rest, dtype=np.float64, ndmin=2)
            return cls.tabulated(data[:, 0], data[:, 1])
        raise DomainError(f"unknown eta family {spec!r}")

    @property
    def label(self):
        if self.kind == "constant":
            return f"constant:{self.theta:g}"
        if self.kind == "logpower":
            return f"logpower:{self.c:g},{self.a:g},{self.b:g}"
        return f"table:{len(self.u_tab)}pts"

    @property
    def unimodal(self):
        """Whether the coarse-scan + golden-section route applies."""
        return self.kind != "table"

    @property
    def derivative_vanishes(self):
        """eta'(u) -> 0 as u -> infinity (extra hypothesis of the converse direction).

        Holds for every kind here: tables are held constant past their last knot.
        """
        return True

    def raw(self, u):
        """Uncapped log-power expression (other kinds: same as __call__)."""
        u = np.asarray(u, dtype=np.float64)
        if self.kind != "logpower":
            return self(u)
        L = np.log(u + 3.0)
        return self.c / (L**self.a * np.log(L) ** self.b)

    def __call__(self, u):
        u = np.asarray(u, dtype=np.float64)
        if self.kind == "constant":
            out = np.full(u.shape, self.theta)
        elif self.kind == "logpower":
            out = np.minimum(self.cap, self.raw(u))
        else:
            out = np.interp(u, self.u_tab, self.eta_tab)
        return out if out.ndim else float(out)

    def derivative(self, u):
        """d/du of the uncapped expression."""
        u = np.asarray(u, dtype=np.float64)
        if self.kind == "constant":
            return np.zeros(u.shape) if u.ndim else 0.0
        if self.kind != "logpower":
            raise DomainError("derivative only available for built-in families")
        L = np.log(u + 3.0)
        lnL = np.log(L)
        eta = self.c / (L**self.a * lnL**self.b)
        out = -eta * (self.a / L + self.b / (L * lnL)) / (u + 3.0)
        return out if out.ndim else float(out)


@dataclass(frozen=True)
class MinimizationResult:
    x: float
    u_star: float
    value: float
    bracket: tuple
    evaluations: int


def golden_section(f, lo, hi, tol=1e-10, max_iter=200):
    """Minimise a unimodal f on [lo, hi]; returns (argmin, f(argmin), evaluations)."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    n = 2
    while b - a > tol and n < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
        n += 1
    m = 0.5 * (a + b)
    fm = f(m)
    best = min((fm, m), (f(lo), lo), (f(hi), hi))
    return best[1], best[0], n + 3


def _minimise(obj, lo, hi, unimodal, x):
    grid = np.linspace(lo, hi, COARSE_POINTS if unimodal else AUDIT_POINTS + 1)
    vals = obj(grid)
    k = int(np.argmin(vals))
    evals = len(grid)
    if not unimodal:
        return grid[k], float(vals[k]), (lo, hi), evals
    a = grid[max(k - 1, 0)]
    b = grid[min(k + 1, len(grid) - 1)]
    arg, val, n = golden_section(lambda t: float(obj(t)), a, b)
    return arg, val, (a, b), evals + n


def omega(eta, x):
    """omega(x) = min_{u>=1} (eta(u) log x + log u), searched in v = log u."""
    if not x >= 3:
        raise DomainError(f"x must be >= 3, got {x}")
    lx = math.log(x)
    vmax = max(1.0, 2.0 * float(eta(1.0)) * lx)
    obj = omega_objective(eta, x)
    v, val, br, n = _minimise(obj, 0.0, vmax, eta.unimodal, x)
    return MinimizationResult(float(x), math.exp(v), val, (math.exp(br[0]), math.exp(br[1])), n)


def omega_objective(eta, x):
    """v -> eta(e^v) log x + v, the omega objective in the log variable."""
    lx = math.log(x)
    return lambda v: eta(np.exp(v)) * lx + v


def varpi(eta, x):
    """varpi(x) = min_{u>=0} (eta(u) log x + u)."""
    if not x >= 3:
        raise DomainError(f"x must be >= 3, got {x}")
    return _varpi(eta, x)


def _varpi(eta, x):
    lx = math.log(x)
    # any u beyond eta(0) log x already exceeds the value at u = 0
    umax = max(1.0, float(eta(0.0)) * lx)
    obj = varpi_objective(eta, x)
    u, val, br, n = _minimise(obj, 0.0, umax, eta.unimodal, x)
    return MinimizationResult(float(x), float(u), val, br, n)


def a_inequality(eta, x, A):
    """``(varpi((x/2)^{1/A}), varpi(x/2) / A)``; the first should dominate.

    The inner argument may fall below 3 for small x and large A, so the
    minimisation here accepts any argument above 1.
    """
    if not A > 1:
        raise DomainError(f"A must exceed 1, got {A}")
    if not x > 2:
        raise DomainError(f"x must exceed 2, got {x}")
    inner = (x / 2.0) ** (1.0 / A)
    if inner <= 1.0:
        raise DomainError(f"(x/2)^(1/A) = {inner} must exceed 1")
    return _varpi(eta, inner).value, _varpi(eta, x / 2.0).value / A


def varpi_objective(eta, x):
    lx = math.log(x)
    return lambda u: eta(u) * lx + u


def omega_asymptotic(c, a, b, x, literal=False):
    """Leading term of omega(x) for the log-power family.

    With L^{1+a} = aa c (1+a)^b log x / (log log x)^b (aa = 1 if a = 0, else a)
    the minimum sits where c log x / (L^a (log L)^b) = L / aa, so
    omega(x) ~ ((1 + a) / aa) L. ``literal=True`` returns (1 + a) L instead,
    which agrees only for a in {0, 1}.
    """
    if not x >= 16:
        raise DomainError(f"x must be >= 16, got {x}")
    if not c > 0 or not 0.0 <= a <= 1.0 or (a == 0.0 and b < 0.0):
        raise DomainError(f"parameters outside admissible range: c={c}, a={a}, b={b}")
    aa = 1.0 if a == 0.0 else a
    lx = math.log(x)
    L = (aa * c * (1.0 + a) ** b * lx / math.log(lx) ** b) ** (1.0 / (1.0 + a))
    coeff = (1.0 + a) if literal else (1.0 + a) / aa
    return coeff * L


def critical_point(eta, x, tol=1e-12):
    """Solve u eta'(u) = -1/log x by bisection in log u (uncapped log-power eta)."""
    if eta.kind != "logpower":
        raise DomainError("critical point is defined for the log-power family")
    if not x >= 16:
        raise DomainError(f"x must be >= 16, got {x}")
    target = -1.0 / math.log(x)

    def h(v):
        u = math.exp(v)
        return u * eta.derivative(u) - target

    lo, hi = 0.0, 1.0
    if h(lo) > 0:
        raise DomainError("no sign change: u eta'(u) already above -1/log x at u = 1")
    while h(hi) < 0:
        lo, hi = hi, 2.0 * hi
        if hi > 700:
            raise DomainError("no sign change in bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if h(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 4e-16 * max(1.0, hi):
            break
    u0 = math.exp(0.5 * (lo + hi))
    if abs(u0 * eta.derivative(u0) - target) > tol:
        raise DomainError(f"critical point residual above {tol:g}")
    return u0


@dataclass(frozen=True, eq=False)
class BoundShape:
    """x^power (log x)^log_power exp(-C f(inner(x))), inner(x) = (arg_scale x)^(1/A)."""

    form: str
    C: float
    f: Callable
    A: Optional[float] = None
    arg_scale: float = 1.0
    log_power: float = 0.0
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.form not in ("x", "x2"):
            raise DomainError(f"form must be 'x' or 'x2', got {self.form!r}")
        if not self.C > 0:
            raise DomainError(f"C must be positive, got {self.C}")
        if self.A is not None and not self.A > 1:
            raise DomainError(f"A must exceed 1, got {self.A}")

    @property
    def power(self):
        return 1 if self.form == "x" else 2

    def inner(self, x):
        y = self.arg_scale * x
        return y ** (1.0 / self.A) if self.A is not None else y

    def __call__(self, x):
        x = float(x)
        lp = math.log(x) ** self.log_power if self.log_power else 1.0
        return x**self.power * lp * math.exp(-self.C * float(self.f(self.inner(x))))


def transfer_forward(shape_R):
    """R << x exp(-C f(x))  gives  R_1, E << N^2 exp(-C f(N)) (same C and f)."""
    if shape_R.form != "x":
        raise DomainError(f"forward transfer needs form 'x', got {shape_R.form!r}")
    return BoundShape("x2", shape_R.C, shape_R.f, shape_R.A, shape_R.arg_scale,
                      shape_R.log_power, dict(shape_R.meta, transfer="forward"))


def transfer_backward(shape_R1):
    """R_1 << x^2 exp(-C1 g(x))  gives  R << x exp(-(C1/2) g(x/2))."""
    if shape_R1.form != "x2":
        raise DomainError(f"backward transfer needs form 'x2', got {shape_R1.form!r}")
    return BoundShape("x", shape_R1.C / 2.0, shape_R1.f, shape_R1.A, shape_R1.arg_scale / 2.0,
                      shape_R1.log_power, dict(shape_R1.meta, transfer="backward"))


def bhowmik_ruzsa_shape(f, A):
    """R << x (log x)^{2/5} exp(-(1/5) f((x/2)^{1/A})), the shape delivered by the converse argument."""
    if not A > 1:
        raise DomainError(f"A must exceed 1, got {A}")
    return BoundShape("x", 0.2, f, A=float(A), arg_scale=0.5, log_power=0.4,
                      meta={"A": float(A), "delta": "N^-1 (log N)^(1/5) exp((2/5) f(N^(1/A)))"})


def balancing_delta(f, A, N):
    """Arc split delta = N^{-1} (log N)^{1/5} exp((2/5) f(N^{1/A}))."""
    return math.log(N) ** 0.2 * math.exp(0.4 * float(f(N ** (1.0 / A)))) / N


def envelope_fit(rows, shape):
    """sup over rows of |residual| / shape(N)."""
    rows = list(rows)
    if not rows:
        raise DomainError("no rows to fit")
    best = 0.0
    for r in rows:
        s = shape(r.N)
        if s == 0 or not math.isfinite(s):
            raise DomainError(f"degenerate envelope {s!r} at N={r.N}")
        best = max(best, abs(r.residual) / s)
    return best


def assumption_window(f, xs, implied_constant=1.0):
    """Check (log x)^{3/5} (log log x)^{1/5} <= K f(x) and f(x) <= (1/2) log x on ``xs``.

    Only the lower end carries the implied constant K. Returns
    (ok, min of K f / lower, max of f / ((1/2) log x)).
    """
    lower_worst = math.inf
    upper_worst = 0.0
    for x in xs:
        lx = math.log(x)
        fx = float(f(x))
        lower = lx**0.6 * math.log(lx) ** 0.2
        lower_worst = min(lower_worst, implied_constant * fx / lower)
        upper_worst = max(upper_worst, fx / (0.5 * lx))
    return lower_worst >= 1.0 and upper_worst <= 1.0, lower_worst, upper_worst


def is_increasing(f, xs):
    vals = [float(f(x)) for x in sorted(xs)]
    return all(b >= a for a, b in zip(vals, vals[1:]))
