"""Gaussian trial-function bound on the ground energy of the Gaussian well."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .numerics import bisect_root

__all__ = ["VariationalResult", "expectation_h", "stationarity", "solve_optimal_b"]

B_TOL = 1e-12


@dataclass(frozen=True)
class VariationalResult:
    b_star: float
    energy_bound: float
    residual: float


def _check_positive(**kwargs):
    for name, value in kwargs.items():
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{name} must be positive and finite, got {value!r}")


def expectation_h(b: float, v0: float, alpha: float) -> float:
    """<H> for the normalised trial function (2b/pi)^(1/4) exp(-b x^2)."""
    _check_positive(b=b, v0=v0, alpha=alpha)
    return 0.5 * b - v0 * math.sqrt(2.0 * b / (2.0 * b + alpha))


def stationarity(b: float, v0: float, alpha: float) -> float:
    """b (2b + alpha)^3 - 2 v0^2 alpha^2; zero where d<H>/db vanishes, increasing in b."""
    return b * (2.0 * b + alpha) ** 3 - 2.0 * v0 * v0 * alpha * alpha


def solve_optimal_b(v0: float, alpha: float) -> VariationalResult:
    _check_positive(v0=v0, alpha=alpha)

    def f(b: float) -> float:
        return stationarity(b, v0, alpha)

    lo = 1e-300
    hi = 1.0
    while f(hi) <= 0:
        hi *= 2.0
    b_star = bisect_root(f, lo, hi, B_TOL)
    return VariationalResult(b_star, expectation_h(b_star, v0, alpha), f(b_star))
