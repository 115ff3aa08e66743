"""Bound states, WKB estimates and tunneling for Gaussian-family potentials (hbar = m = 1)."""

from .analysis import (
    DoubleWellReport,
    Parity,
    StateDescriptor,
    classify_parity,
    count_nodes,
    describe_states,
    double_well_report,
)
from .discretize import Grid, TridiagonalOperator, build_grid, build_hamiltonian, default_domain
from .eigensolve import Spectrum, eigen_range, solve_schrodinger, sturm_count
from .potential import PotentialKind, PotentialSpec, bound_state_sufficient, evaluate, integral_over_line
from .semiclassical import (
    TransmissionResult,
    WkbCount,
    stm_paper_formula,
    transmission,
    uncertainty_tunneling_condition,
    wkb_count,
    wkb_levels,
)
from .variational import VariationalResult, expectation_h, solve_optimal_b

__version__ = "0.1.0"
