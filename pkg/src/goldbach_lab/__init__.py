"""Numerical laboratory for averages of weighted Goldbach representations.

Exact arithmetic side (von Mangoldt table, psi, psi_1, psi_2, G, F), truncated
zero sums over ingested zeta-zero tables, zero-free-region transfer functions,
and circle-method quadrature checks.
"""
from goldbach_lab.exceptions import (
    AliasingError,
    CapacityError,
    CoverageError,
    DomainError,
    GoldbachLabError,
    ZeroTableParseError,
)
from goldbach_lab.sieve import LambdaTable, build_lambda, psi, psi1, remainder, max_abs_R

__version__ = "0.1.0"

__all__ = [
    "AliasingError",
    "CapacityError",
    "CoverageError",
    "DomainError",
    "GoldbachLabError",
    "ZeroTableParseError",
    "LambdaTable",
    "build_lambda",
    "psi",
    "psi1",
    "remainder",
    "max_abs_R",
]
