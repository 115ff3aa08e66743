"""Post-processing of spectra: nodes, parity, and double-well splitting."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .discretize import Grid, build_grid, default_domain
from .eigensolve import Spectrum, solve_schrodinger
from .potential import PotentialSpec

__all__ = [
    "Parity",
    "AsymmetricGridError",
    "InsufficientBoundStatesError",
    "StateDescriptor",
    "DoubleWellReport",
    "count_nodes",
    "classify_parity",
    "describe_states",
    "double_well_report",
]

NODE_RTOL = 1e-6
PARITY_RTOL = 1e-6


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"
    NONE = "none"


class AsymmetricGridError(ValueError):
    """Parity is undefined on a grid that is not mirror-symmetric about x = 0."""


class InsufficientBoundStatesError(ArithmeticError):
    """Fewer bound states than the requested analysis needs."""


@dataclass(frozen=True)
class StateDescriptor:
    index: int
    energy: float
    nodes: int
    parity: Parity
    bound: bool


@dataclass(frozen=True)
class DoubleWellReport:
    """Lowest doublet of the double Gaussian well.

    ``decoupling_ratio`` and ``e3`` are None when fewer than three states were
    computed. ``e3_bound`` records whether the third level is a true bound
    state or the bottom of the box-discretised continuum.
    """

    e1: float
    e2: float
    e3: float | None
    delta_e: float
    period: float
    decoupling_ratio: float | None
    e3_bound: bool | None
    spectrum: Spectrum = field(repr=False, compare=False)


def count_nodes(state) -> int:
    """Sign changes among the samples whose magnitude exceeds 1e-6 of the peak.

    Samples below the threshold are skipped rather than breaking a pair, so
    a node that falls exactly on a grid point still counts once.
    """
    psi = np.asarray(state, dtype=float)
    if psi.size == 0:
        return 0
    threshold = NODE_RTOL * np.max(np.abs(psi))
    significant = psi[np.abs(psi) > threshold]
    return int(np.count_nonzero(np.signbit(significant[1:]) != np.signbit(significant[:-1])))


def classify_parity(state, grid: Grid) -> Parity:
    if not grid.is_symmetric():
        raise AsymmetricGridError(
            f"grid [{grid.x_min}, {grid.x_max}] is not symmetric about the origin"
        )
    psi = np.asarray(state, dtype=float)
    mirror = psi[::-1]
    scale = PARITY_RTOL * np.max(np.abs(psi))
    if np.max(np.abs(psi - mirror)) <= scale:
        return Parity.EVEN
    if np.max(np.abs(psi + mirror)) <= scale:
        return Parity.ODD
    return Parity.NONE


def describe_states(spectrum: Spectrum) -> list[StateDescriptor]:
    symmetric = spectrum.grid.is_symmetric()
    out = []
    for i, psi in enumerate(spectrum.states):
        parity = classify_parity(psi, spectrum.grid) if symmetric else Parity.NONE
        out.append(
            StateDescriptor(
                index=i,
                energy=float(spectrum.energies[i]),
                nodes=count_nodes(psi),
                parity=parity,
                bound=bool(spectrum.bound[i]),
            )
        )
    return out


def double_well_report(
    v0: float,
    alpha: float,
    grid: Grid | None = None,
    n_states: int = 3,
) -> DoubleWellReport:
    """Splitting, tunneling period and decoupling ratio of -v0 x^2 exp(-alpha x^2).

    The period is 2 pi / (E2 - E1) with hbar = 1.

    Raises:
        InsufficientBoundStatesError: fewer than two bound states.
    """
    spec = PotentialSpec.double_well(v0, alpha)
    if grid is None:
        grid = build_grid(*default_domain(spec))
    spectrum = solve_schrodinger(spec, grid, max(2, n_states))
    if spectrum.bound_count < 2:
        raise InsufficientBoundStatesError(
            f"double well (v0={v0}, alpha={alpha}) has {spectrum.bound_count} bound state(s); need 2"
        )
    e = spectrum.energies
    e1, e2 = float(e[0]), float(e[1])
    delta_e = e2 - e1
    e3 = float(e[2]) if e.size >= 3 else None
    return DoubleWellReport(
        e1=e1,
        e2=e2,
        e3=e3,
        delta_e=delta_e,
        period=2.0 * math.pi / delta_e,
        decoupling_ratio=None if e3 is None else delta_e / (e3 - e2),
        e3_bound=None if e3 is None else bool(spectrum.bound[2]),
        spectrum=spectrum,
    )
