"""Gaussian-family potentials in natural units (hbar = m = 1)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "PotentialKind",
    "PotentialSpec",
    "PotentialDomainError",
    "UnsupportedKindError",
    "evaluate",
    "integral_over_line",
    "bound_state_sufficient",
]


class PotentialKind(enum.Enum):
    GAUSSIAN_WELL = "gaussian-well"
    GAUSSIAN_BARRIER = "gaussian-barrier"
    DOUBLE_GAUSSIAN_WELL = "double-well"
    HALF_GAUSSIAN_RADIAL = "half-gaussian"

    @property
    def full_line(self) -> bool:
        return self is not PotentialKind.HALF_GAUSSIAN_RADIAL


class PotentialDomainError(ValueError):
    """Position outside the domain where the potential is defined."""


class UnsupportedKindError(ValueError):
    """Operation not defined for this potential kind."""


@dataclass(frozen=True)
class PotentialSpec:
    """One potential of the Gaussian family.

    ``l`` is the angular momentum quantum number and only matters for the
    radial half-Gaussian, where it adds the centrifugal term l(l+1)/(2x^2).
    """

    kind: PotentialKind
    v0: float
    alpha: float
    l: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kind", PotentialKind(self.kind))
        if not (math.isfinite(self.v0) and self.v0 > 0):
            raise ValueError(f"v0 must be positive and finite, got {self.v0!r}")
        if not (math.isfinite(self.alpha) and self.alpha > 0):
            raise ValueError(f"alpha must be positive and finite, got {self.alpha!r}")
        if int(self.l) != self.l or self.l < 0:
            raise ValueError(f"l must be a nonnegative integer, got {self.l!r}")
        if self.l and self.kind is not PotentialKind.HALF_GAUSSIAN_RADIAL:
            raise ValueError("l is only meaningful for the half-Gaussian radial potential")
        object.__setattr__(self, "l", int(self.l))

    @classmethod
    def well(cls, v0: float, alpha: float) -> "PotentialSpec":
        return cls(PotentialKind.GAUSSIAN_WELL, v0, alpha)

    @classmethod
    def barrier(cls, v0: float, alpha: float) -> "PotentialSpec":
        return cls(PotentialKind.GAUSSIAN_BARRIER, v0, alpha)

    @classmethod
    def double_well(cls, v0: float, alpha: float) -> "PotentialSpec":
        return cls(PotentialKind.DOUBLE_GAUSSIAN_WELL, v0, alpha)

    @classmethod
    def radial(cls, v0: float, alpha: float, l: int = 0) -> "PotentialSpec":
        return cls(PotentialKind.HALF_GAUSSIAN_RADIAL, v0, alpha, l)


def evaluate(spec: PotentialSpec, x):
    """Potential energy at ``x`` (scalar or array).

    Scalars come back as floats, arrays as float arrays of the same shape.

    Raises:
        PotentialDomainError: non-finite ``x``, or ``x <= 0`` for the radial kind.
    """
    xa = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xa)):
        raise PotentialDomainError("potential evaluated at a non-finite position")
    gauss = np.exp(-spec.alpha * xa * xa)
    kind = spec.kind
    if kind is PotentialKind.GAUSSIAN_WELL:
        v = -spec.v0 * gauss
    elif kind is PotentialKind.GAUSSIAN_BARRIER:
        v = spec.v0 * gauss
    elif kind is PotentialKind.DOUBLE_GAUSSIAN_WELL:
        v = -spec.v0 * xa * xa * gauss
    else:
        if np.any(xa <= 0):
            raise PotentialDomainError("radial potential is defined only for x > 0")
        v = -spec.v0 * gauss
        if spec.l:
            v = v + spec.l * (spec.l + 1) / (2.0 * xa * xa)
    return float(v) if v.ndim == 0 else v


def integral_over_line(spec: PotentialSpec) -> float:
    """Closed-form integral of V over the whole real line."""
    kind = spec.kind
    if kind is PotentialKind.GAUSSIAN_WELL:
        return -spec.v0 * math.sqrt(math.pi / spec.alpha)
    if kind is PotentialKind.GAUSSIAN_BARRIER:
        return spec.v0 * math.sqrt(math.pi / spec.alpha)
    if kind is PotentialKind.DOUBLE_GAUSSIAN_WELL:
        return -spec.v0 * math.sqrt(math.pi) / (2.0 * spec.alpha**1.5)
    raise UnsupportedKindError(f"{kind.value} is not a full-line potential")


def bound_state_sufficient(spec: PotentialSpec) -> bool:
    """True when a negative line integral guarantees at least one bound state.

    This is a sufficient condition only; a False result does not rule out
    bound states.
    """
    return integral_over_line(spec) < 0
