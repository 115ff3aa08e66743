import os

import pytest

from qwell.discretize import build_grid, default_domain
from qwell.eigensolve import solve_schrodinger
from qwell.potential import PotentialSpec

os.environ.setdefault("QWELL_THREADS", "0")


@pytest.fixture(scope="session")
def solved():
    """Memoised default-grid solves keyed by (kind, v0, alpha, n_states)."""
    cache = {}

    def get(kind, v0, alpha, n_states):
        key = (kind, v0, alpha, n_states)
        if key not in cache:
            spec = {
                "well": PotentialSpec.well,
                "double": PotentialSpec.double_well,
                "radial": PotentialSpec.radial,
                "barrier": PotentialSpec.barrier,
            }[kind](v0, alpha)
            grid = build_grid(*default_domain(spec))
            cache[key] = solve_schrodinger(spec, grid, n_states)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
