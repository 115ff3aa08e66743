"""WKB estimates for the Gaussian well and barrier.

Level counting and quantised energies for the well, opacity and
transmission for the barrier (by quadrature and in closed form via erf),
the uncertainty-principle tunneling test, and the quoted STM rule of thumb.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .numerics import QuadratureSettings, adaptive_quadrature, bisect_root, erf
from .potential import PotentialKind, PotentialSpec

__all__ = [
    "WkbCount",
    "TransmissionResult",
    "wkb_count",
    "phase_integral",
    "wkb_levels",
    "transmission",
    "stm_paper_formula",
    "uncertainty_tunneling_condition",
]

SCAN_POINTS = 200
SCAN_MARGIN = 1e-9
# the scan only needs the sign of the residual
_SCAN_QUAD = QuadratureSettings(abs_tol=1e-7)
_LEVEL_QUAD = QuadratureSettings(abs_tol=1e-10)


@dataclass(frozen=True)
class WkbCount:
    n_real: float
    n_levels: int


@dataclass(frozen=True)
class TransmissionResult:
    beta: float
    theta_exact: float
    t_exact: float
    theta_approx: float
    t_approx: float
    turning_points: tuple[float, float]


def _positive(name: str, value: float) -> None:
    if not (math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be positive and finite, got {value!r}")


def wkb_count(v0: float, alpha: float) -> WkbCount:
    """Semiclassical number of bound levels, N = (2/sqrt(pi)) sqrt(v0/alpha) + 1/2.

    The integer count is floor(N).
    """
    _positive("v0", v0)
    _positive("alpha", alpha)
    n_real = 2.0 / math.sqrt(math.pi) * math.sqrt(v0 / alpha) + 0.5
    return WkbCount(n_real, math.floor(n_real))


def phase_integral(v0: float, alpha: float, energy: float, settings: QuadratureSettings | None = None) -> float:
    """Integral of sqrt(2(E - V)) between the turning points of the well, -v0 < E < 0."""
    if not -v0 < energy < 0:
        raise ValueError(f"energy must lie in (-v0, 0), got {energy!r}")
    x_turn = math.sqrt(math.log(v0 / -energy) / alpha)

    def momentum(x: float) -> float:
        return math.sqrt(max(0.0, 2.0 * (energy + v0 * math.exp(-alpha * x * x))))

    # even integrand: integrate the right half and double it
    return 2.0 * adaptive_quadrature(momentum, 0.0, x_turn, settings or _LEVEL_QUAD)


def wkb_levels(spec: PotentialSpec, max_n: int) -> np.ndarray:
    """Energies solving the quantisation rule for n = 1..max_n (missing levels omitted)."""
    if spec.kind is not PotentialKind.GAUSSIAN_WELL:
        raise ValueError("WKB levels are implemented for the Gaussian well only")
    if max_n < 1:
        raise ValueError(f"max_n must be >= 1, got {max_n}")
    v0, alpha = spec.v0, spec.alpha
    grid = np.linspace(-v0 * (1.0 - SCAN_MARGIN), -v0 * SCAN_MARGIN, SCAN_POINTS)
    phases = [phase_integral(v0, alpha, float(e), _SCAN_QUAD) for e in grid]

    levels = []
    for n in range(1, max_n + 1):
        target = (n - 0.5) * math.pi
        for k in range(SCAN_POINTS - 1):
            if (phases[k] - target) * (phases[k + 1] - target) <= 0:
                def residual(e: float, target=target) -> float:
                    return phase_integral(v0, alpha, e) - target

                levels.append(bisect_root(residual, float(grid[k]), float(grid[k + 1]), 1e-11 * v0))
                break
    return np.array(levels)


def transmission(v0: float, alpha: float, e: float) -> TransmissionResult:
    """WKB transmission through the barrier v0 exp(-alpha x^2) at energy 0 < e < v0.

    ``theta_exact`` integrates the opacity in the scaled variable y in [-1, 1];
    ``theta_approx`` is the first-order binomial closed form with erf.
    """
    _positive("v0", v0)
    _positive("alpha", alpha)
    if not 0 < e < v0:
        raise ValueError(f"energy must satisfy 0 < e < v0, got e={e!r}, v0={v0!r}")
    beta = v0 / e
    log_beta = math.log(beta)
    inv_beta = 1.0 / beta

    def integrand(y: float) -> float:
        return math.sqrt(max(0.0, math.exp(-log_beta * y * y) - inv_beta))

    exponent_exact = math.sqrt(2.0 * v0 * log_beta / alpha) * adaptive_quadrature(integrand, -1.0, 1.0)
    root_log = math.sqrt(log_beta)
    exponent_approx = math.sqrt(2.0 * v0 / alpha) * (
        root_log + 0.5 * math.sqrt(math.pi) * erf(root_log) - root_log / beta
    )
    theta_exact = math.exp(exponent_exact)
    theta_approx = math.exp(exponent_approx)
    x_turn = math.sqrt(log_beta / alpha)
    return TransmissionResult(
        beta=beta,
        theta_exact=theta_exact,
        t_exact=math.exp(-2.0 * exponent_exact),
        theta_approx=theta_approx,
        t_approx=math.exp(-2.0 * exponent_approx),
        turning_points=(-x_turn, x_turn),
    )


def stm_paper_formula(v0_over_alpha: float) -> float:
    """T ~ exp(-2.2 sqrt(v0/alpha)), the rule of thumb quoted for the STM gap.

    The coefficient 2.2 is taken as given; :func:`transmission` does not
    reproduce it.
    """
    _positive("v0_over_alpha", v0_over_alpha)
    return math.exp(-2.2 * math.sqrt(v0_over_alpha))


def uncertainty_tunneling_condition(v0: float, alpha: float, e: float) -> bool:
    """alpha/8 > v0 - e: the energy spread over a barrier of width alpha^-1/2 is real."""
    _positive("v0", v0)
    _positive("alpha", alpha)
    if not e < v0:
        raise ValueError(f"need e < v0, got e={e!r}, v0={v0!r}")
    return alpha / 8.0 > v0 - e
