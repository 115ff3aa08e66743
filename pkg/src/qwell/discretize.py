"""Uniform grids and the three-point finite-difference Hamiltonian."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .potential import PotentialKind, PotentialSpec, evaluate

__all__ = [
    "Grid",
    "TridiagonalOperator",
    "build_grid",
    "default_domain",
    "build_hamiltonian",
    "DEFAULT_MESH",
]

DEFAULT_MESH = 4000


@dataclass(frozen=True)
class Grid:
    """Uniform mesh with ``r`` intervals; only the ``r - 1`` interior points carry unknowns."""

    x_min: float
    x_max: float
    r: int
    delta: float = field(init=False)
    points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("grid bounds must be finite")
        if not self.x_min < self.x_max:
            raise ValueError(f"need x_min < x_max, got {self.x_min} >= {self.x_max}")
        if int(self.r) != self.r or self.r < 3:
            raise ValueError(f"mesh count r must be an integer >= 3, got {self.r!r}")
        object.__setattr__(self, "r", int(self.r))
        delta = (self.x_max - self.x_min) / self.r
        object.__setattr__(self, "delta", delta)
        pts = self.x_min + delta * np.arange(1, self.r, dtype=float)
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return self.r - 1

    def is_symmetric(self, rtol: float = 1e-12) -> bool:
        return abs(self.x_min + self.x_max) <= rtol * (self.x_max - self.x_min)


@dataclass(frozen=True)
class TridiagonalOperator:
    """Real symmetric tridiagonal matrix stored as diagonal and one shared off-diagonal."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self):
        d = np.array(self.diag, dtype=float)
        e = np.array(self.offdiag, dtype=float)
        if d.ndim != 1 or e.ndim != 1 or d.size < 1 or e.size != d.size - 1:
            raise ValueError(
                f"need diag of length n and offdiag of length n-1, got {d.shape} and {e.shape}"
            )
        if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
            raise ValueError("operator entries must be finite")
        d.flags.writeable = False
        e.flags.writeable = False
        object.__setattr__(self, "diag", d)
        object.__setattr__(self, "offdiag", e)

    @property
    def n(self) -> int:
        return self.diag.size

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diag * v
        out[:-1] += self.offdiag * v[1:]
        out[1:] += self.offdiag * v[:-1]
        return out

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.offdiag, 1) + np.diag(self.offdiag, -1)

    def gershgorin(self) -> tuple[float, float]:
        radius = np.zeros(self.n)
        radius[:-1] += np.abs(self.offdiag)
        radius[1:] += np.abs(self.offdiag)
        return float(np.min(self.diag - radius)), float(np.max(self.diag + radius))

    def norm(self) -> float:
        """Infinity norm (max absolute row sum), a cheap bound on the spectral radius."""
        lo, hi = self.gershgorin()
        return max(abs(lo), abs(hi))


def build_grid(x_min: float, x_max: float, r: int) -> Grid:
    return Grid(float(x_min), float(x_max), r)


def default_domain(spec: PotentialSpec) -> tuple[float, float, int]:
    """Box and mesh count used when the caller gives none.

    The half-width scales with the Gaussian length 1/sqrt(alpha), never below 12.
    """
    half = max(12.0, 12.0 / math.sqrt(spec.alpha))
    if spec.kind is PotentialKind.HALF_GAUSSIAN_RADIAL:
        return 0.0, 2.0 * half, DEFAULT_MESH
    return -half, half, DEFAULT_MESH


def build_hamiltonian(spec: PotentialSpec, grid: Grid) -> TridiagonalOperator:
    """Assemble -(1/2) d^2/dx^2 + V on ``grid`` with Dirichlet walls at both ends."""
    if spec.kind is PotentialKind.HALF_GAUSSIAN_RADIAL and grid.x_min != 0.0:
        raise ValueError("radial grids must start at x_min = 0 (u(0) = 0 boundary)")
    inv_d2 = 1.0 / (grid.delta * grid.delta)
    diag = inv_d2 + evaluate(spec, grid.points)
    offdiag = np.full(grid.size - 1, -0.5 * inv_d2)
    return TridiagonalOperator(diag, offdiag)
