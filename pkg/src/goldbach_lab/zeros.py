"""Ingestion of Riemann zeta zero ordinates.

Input is plain ASCII: one positive decimal ordinate per line, ascending.
Blank lines and lines starting with ``#`` are skipped; ``.gz`` files are read
transparently. Every zero is taken to lie on the critical line (beta = 1/2),
which published tables certify up to their height.
"""
import gzip
import math
from dataclasses import dataclass, field

import numpy as np

from goldbach_lab.exceptions import CoverageError, DomainError, ZeroTableParseError

FIRST_ORDINATE = 14.134725141734694


@dataclass(frozen=True, eq=False)
class ZeroTable:
    gammas: np.ndarray = field(repr=False)
    source: str = ""
    max_gamma: float = 0.0

    def __post_init__(self):
        g = self.gammas
        if g.ndim != 1:
            raise ValueError("gammas must be one-dimensional")
        if len(g) and (g[0] <= 0 or np.any(np.diff(g) <= 0)):
            raise ValueError("gammas must be positive and strictly increasing")
        g.setflags(write=False)

    def __len__(self):
        return len(self.gammas)

    @classmethod
    def from_ordinates(cls, gammas, source="in-memory", max_gamma=None):
        g = np.array(gammas, dtype=np.float64)
        if max_gamma is None:
            max_gamma = float(g[-1]) if len(g) else 0.0
        return cls(g, source, float(max_gamma))

    def upto(self, T):
        """Ordinates 0 < gamma <= T; T must not exceed the covered height."""
        if T > self.max_gamma:
            raise CoverageError(f"T={T:g} beyond table coverage max_gamma={self.max_gamma:g}")
        return self.gammas[: np.searchsorted(self.gammas, T, side="right")]

    def truncated(self, T):
        """A new table keeping only ordinates <= T (coverage height becomes T)."""
        return ZeroTable(np.array(self.upto(T)), f"{self.source} [<= {T:g}]", float(T))


def _open_text(path):
    if str(path).endswith(".gz"):
        return gzip.open(path, "rt", encoding="ascii")
    return open(path, "r", encoding="ascii")


def load_zeros(path, max_gamma=None, max_zeros=None):
    """Parse a zero-ordinate file, stopping at ``max_gamma`` or after ``max_zeros`` entries.

    The returned table's ``max_gamma`` is the coverage height: the requested
    height limit when one is given and the file reaches it, otherwise the last
    ordinate read.
    """
    if max_gamma is not None and not max_gamma > 0:
        raise DomainError(f"max_gamma must be positive, got {max_gamma}")
    if max_zeros is not None and max_zeros < 1:
        raise DomainError(f"max_zeros must be positive, got {max_zeros}")
    values = []
    prev = 0.0
    reached = False
    with _open_text(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            try:
                g = float(line)
            except ValueError:
                raise ZeroTableParseError(f"non-numeric entry {line!r}", lineno, path) from None
            if not math.isfinite(g) or g <= 0:
                raise ZeroTableParseError(f"ordinate must be positive and finite, got {line!r}", lineno, path)
            if g <= prev:
                raise ZeroTableParseError(f"ordinate {g!r} not greater than previous {prev!r}", lineno, path)
            prev = g
            if max_gamma is not None and g > max_gamma:
                reached = True
                break
            values.append(g)
            if max_zeros is not None and len(values) >= max_zeros:
                break
    if not values:
        raise ZeroTableParseError("no ordinates read", None, path)
    coverage = float(max_gamma) if reached else values[-1]
    return ZeroTable(np.array(values, dtype=np.float64), str(path), coverage)


def count_in_window(table, T):
    """Number of ordinates in (T, T + 1]."""
    if T < 0:
        raise DomainError(f"T must be >= 0, got {T}")
    if T + 1 > table.max_gamma:
        raise CoverageError(f"window ({T:g}, {T + 1:g}] beyond table coverage {table.max_gamma:g}")
    g = table.gammas
    return int(np.searchsorted(g, T + 1, side="right") - np.searchsorted(g, T, side="right"))


def window_constant(table, Ts):
    """Empirical sup over ``Ts`` of count_in_window(T) / log(T + 3)."""
    return max(count_in_window(table, T) / math.log(T + 3.0) for T in Ts)
