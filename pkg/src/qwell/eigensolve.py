"""Lowest eigenpairs of symmetric tridiagonal matrices, and Schrodinger solves.

Eigenvalues are isolated by Sturm-sequence bisection and eigenvectors come
from inverse iteration on the shifted matrix, factorised by Gaussian
elimination with partial pivoting. This is the same division of labour as
LAPACK's ``dstebz`` + ``dstein`` pair (what ``dstevx`` calls internally),
written out so the behaviour is fully determined by this module.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field

import numpy as np

from .discretize import Grid, TridiagonalOperator, build_hamiltonian
from .potential import PotentialKind, PotentialSpec

__all__ = [
    "ConvergenceError",
    "Spectrum",
    "sturm_count",
    "eigenvalues_lowest",
    "eigen_range",
    "solve_schrodinger",
    "discretization_error_estimate",
    "negative_level_count",
]

_EPS = np.finfo(float).eps
_SAFE_MIN = sys.float_info.min

MAX_INVERSE_ITERATIONS = 10
START_SEED = 1
CLUSTER_RTOL = 1e-6  # reorthogonalise when eigenvalues closer than this * ||A||
CONTAMINATION_RTOL = 1e-6
BOUND_FLOOR = 1e-8


class ConvergenceError(ArithmeticError):
    """Inverse iteration did not converge for eigenpair ``index``."""

    def __init__(self, index: int, residual: float):
        super().__init__(
            f"inverse iteration failed to converge for eigenpair {index} (residual {residual:.3e})"
        )
        self.index = index
        self.residual = residual


def _pivmin(offdiag: np.ndarray) -> float:
    emax = float(np.max(offdiag * offdiag)) if offdiag.size else 0.0
    return _SAFE_MIN * max(1.0, emax)


def _count_below(d: list, e2: list, sigma: float, pivmin: float) -> int:
    # negative pivots of the LDL^T factorisation of T - sigma I
    q = d[0] - sigma
    if abs(q) <= pivmin:
        q = -pivmin
    count = 1 if q < 0 else 0
    for i in range(1, len(d)):
        q = d[i] - sigma - e2[i - 1] / q
        if abs(q) <= pivmin:
            q = -pivmin
        if q < 0:
            count += 1
    return count


def sturm_count(op: TridiagonalOperator, sigma: float) -> int:
    """Number of eigenvalues of ``op`` strictly below ``sigma``."""
    e2 = (op.offdiag * op.offdiag).tolist()
    return _count_below(op.diag.tolist(), e2, float(sigma), _pivmin(op.offdiag))


def eigenvalues_lowest(op: TridiagonalOperator, how_many: int, tol: float | None = None) -> np.ndarray:
    """The ``how_many`` smallest eigenvalues by bisection on the Sturm count.

    ``tol`` is the absolute width of the final bracket; the default is
    1e-12 * max(1, ||A||). Each returned value is the midpoint of its bracket.
    """
    n = op.n
    if not 1 <= how_many <= n:
        raise ValueError(f"how_many must be in [1, {n}], got {how_many}")
    lo0, hi0 = op.gershgorin()
    norm = max(abs(lo0), abs(hi0))
    if tol is None:
        tol = 1e-12 * max(1.0, norm)
    # widen slightly so the Gershgorin ends are safely outside the spectrum
    pad = 2.0 * _EPS * max(1.0, norm) * n
    lo0 -= pad
    hi0 += pad

    d = op.diag.tolist()
    e2 = (op.offdiag * op.offdiag).tolist()
    pivmin = _pivmin(op.offdiag)

    lower = [lo0] * how_many
    upper = [hi0] * how_many
    for j in range(how_many):
        lo, hi = lower[j], upper[j]
        while hi - lo > tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            c = _count_below(d, e2, mid, pivmin)
            # every count tightens the brackets of all requested eigenvalues
            for k in range(j, how_many):
                if k < c:
                    if mid < upper[k]:
                        upper[k] = mid
                elif mid > lower[k]:
                    lower[k] = mid
            lo, hi = lower[j], upper[j]
    return np.array([0.5 * (lower[j] + upper[j]) for j in range(how_many)])


def _factor_shifted(diag: list, off: list, lam: float, pivmin: float):
    """LU factors of (T - lam I) with row partial pivoting.

    U has up to two superdiagonals. Returns (u0, u1, u2, mult, swapped).
    """
    n = len(diag)
    u0 = [0.0] * n
    u1 = [0.0] * n
    u2 = [0.0] * n
    mult = [0.0] * n
    swapped = [False] * n
    cur_a = diag[0] - lam
    cur_c = off[0] if n > 1 else 0.0
    for i in range(n - 1):
        b = off[i]
        nxt_a = diag[i + 1] - lam
        nxt_c = off[i + 1] if i + 1 < n - 1 else 0.0
        if abs(cur_a) >= abs(b):
            if cur_a == 0.0:
                cur_a = pivmin
            m = b / cur_a
            u0[i], u1[i], u2[i] = cur_a, cur_c, 0.0
            cur_a, cur_c = nxt_a - m * cur_c, nxt_c
        else:
            m = cur_a / b
            swapped[i] = True
            u0[i], u1[i], u2[i] = b, nxt_a, nxt_c
            cur_a, cur_c = cur_c - m * nxt_a, -m * nxt_c
        mult[i] = m
    u0[n - 1] = cur_a
    for i in range(n):
        if abs(u0[i]) < pivmin:
            u0[i] = pivmin if u0[i] >= 0 else -pivmin
    return u0, u1, u2, mult, swapped


def _solve_factored(factors, rhs: list) -> list:
    u0, u1, u2, mult, swapped = factors
    n = len(u0)
    y = list(rhs)
    for i in range(n - 1):
        if swapped[i]:
            y[i], y[i + 1] = y[i + 1], y[i]
        y[i + 1] -= mult[i] * y[i]
    x = [0.0] * n
    x[n - 1] = y[n - 1] / u0[n - 1]
    if n > 1:
        x[n - 2] = (y[n - 2] - u1[n - 2] * x[n - 1]) / u0[n - 2]
    for i in range(n - 3, -1, -1):
        x[i] = (y[i] - u1[i] * x[i + 1] - u2[i] * x[i + 2]) / u0[i]
    return x


def eigen_range(op: TridiagonalOperator, how_many: int) -> tuple[np.ndarray, np.ndarray]:
    """Lowest ``how_many`` eigenpairs of ``op``.

    Returns:
        ``(values, vectors)`` with ascending ``values`` of shape ``(k,)`` and
        unit-norm eigenvectors as the rows of ``vectors``, shape ``(k, n)``.

    Raises:
        ConvergenceError: an eigenvector did not reach a residual of
            1e-10 * ||A|| within the iteration cap.
    """
    n = op.n
    values = eigenvalues_lowest(op, how_many)
    norm = op.norm()
    scale = max(norm, _SAFE_MIN)
    res_target = 1e-10 * scale
    cluster_gap = CLUSTER_RTOL * scale
    pivmin = max(_EPS * scale, _SAFE_MIN)

    if n == 1:
        return values, np.ones((1, 1))

    diag = op.diag.tolist()
    off = op.offdiag.tolist()
    rng = np.random.default_rng(START_SEED)
    vectors = np.zeros((how_many, n))

    shifts = values.copy()
    for j in range(1, how_many):
        # coincident shifts would give identical iterates; separate them a hair
        if shifts[j] - shifts[j - 1] < 10.0 * _EPS * scale:
            shifts[j] = shifts[j - 1] + 10.0 * _EPS * scale

    cluster_start = 0
    for j in range(how_many):
        if j > 0 and values[j] - values[j - 1] >= cluster_gap:
            cluster_start = j
        cluster = vectors[cluster_start:j]
        factors = _factor_shifted(diag, off, float(shifts[j]), pivmin)
        x = rng.uniform(-1.0, 1.0, n)
        converged_at = None
        residual = np.inf
        for it in range(MAX_INVERSE_ITERATIONS):
            if cluster.shape[0]:
                x = x - cluster.T @ (cluster @ x)
            x = np.asarray(_solve_factored(factors, (x / np.max(np.abs(x))).tolist()))
            if cluster.shape[0]:
                x = x - cluster.T @ (cluster @ x)
            x /= np.linalg.norm(x)
            residual = float(np.linalg.norm(op.matvec(x) - values[j] * x))
            if converged_at is None and residual <= res_target:
                converged_at = it
            elif converged_at is not None:
                # one extra sweep after convergence, as dstein does
                break
        if converged_at is None:
            raise ConvergenceError(j, residual)
        vectors[j] = x
    return values, vectors


def discretization_error_estimate(state: np.ndarray, delta: float) -> float:
    """Leading O(delta^2) eigenvalue shift of the three-point stencil for one state.

    The stencil reads psi'' + (delta^2/12) psi'''' + ..., which moves the
    eigenvalue by about (delta^2/24) * integral (psi'')^2 dx. ``state`` must be
    normalised with the grid measure.
    """
    padded = np.concatenate(([0.0], state, [0.0]))
    second = (padded[2:] - 2.0 * padded[1:-1] + padded[:-2]) / (delta * delta)
    return float(delta * delta / 24.0 * delta * np.sum(second * second))


@dataclass(frozen=True)
class Spectrum:
    """Lowest eigenstates of a discretised Hamiltonian.

    ``states[i]`` is sampled on ``grid.points`` and normalised so that
    ``grid.delta * sum(states[i]**2) == 1``.
    """

    energies: np.ndarray
    states: np.ndarray
    grid: Grid
    bound_count: int
    bound: np.ndarray
    contaminated: np.ndarray
    spec: PotentialSpec | None = None
    warnings: tuple = field(default=())

    @property
    def n_states(self) -> int:
        return self.energies.size


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    threshold = 1e-6 * np.max(np.abs(vec))
    first = np.flatnonzero(np.abs(vec) > threshold)
    if first.size and vec[first[0]] < 0:
        return -vec
    return vec


def solve_schrodinger(spec: PotentialSpec, grid: Grid, n_states: int) -> Spectrum:
    """Lowest ``n_states`` eigenstates of -(1/2) d^2/dx^2 + V on ``grid``.

    A state is bound when E < -eps_b, with eps_b = max(1e-8, 10 x the state's
    own discretisation error estimate). Bound states whose amplitude at the
    outer box edge exceeds 1e-6 of their peak are flagged as contaminated by
    the box and reported in ``warnings``.
    """
    if not 1 <= n_states <= grid.size:
        raise ValueError(f"n_states must be in [1, {grid.size}], got {n_states}")
    op = build_hamiltonian(spec, grid)
    values, vectors = eigen_range(op, n_states)
    delta = grid.delta
    states = np.empty_like(vectors)
    bound = np.zeros(n_states, dtype=bool)
    contaminated = np.zeros(n_states, dtype=bool)
    warnings = []
    radial = spec.kind is PotentialKind.HALF_GAUSSIAN_RADIAL
    for i in range(n_states):
        psi = _fix_sign(vectors[i] / np.sqrt(delta))
        states[i] = psi
        eps_b = max(BOUND_FLOOR, 10.0 * discretization_error_estimate(psi, delta))
        bound[i] = values[i] < -eps_b
        peak = np.max(np.abs(psi))
        # the radial origin is a true Dirichlet point, not a truncation
        edge = abs(psi[-1]) if radial else max(abs(psi[0]), abs(psi[-1]))
        if bound[i] and edge > CONTAMINATION_RTOL * peak:
            contaminated[i] = True
            warnings.append(
                f"state {i} (E={values[i]:.6g}) touches the box edge: "
                f"edge/peak amplitude {edge / peak:.2e}; enlarge the domain"
            )
    return Spectrum(
        energies=values,
        states=states,
        grid=grid,
        bound_count=int(np.count_nonzero(bound)),
        bound=bound,
        contaminated=contaminated,
        spec=spec,
        warnings=tuple(warnings),
    )


def negative_level_count(spec: PotentialSpec, grid: Grid) -> int:
    """Number of discrete eigenvalues below zero, from a single Sturm count."""
    return sturm_count(build_hamiltonian(spec, grid), 0.0)
