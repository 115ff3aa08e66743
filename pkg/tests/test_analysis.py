import math

import numpy as np
import pytest

from qwell.analysis import (
    AsymmetricGridError,
    InsufficientBoundStatesError,
    Parity,
    classify_parity,
    count_nodes,
    describe_states,
    double_well_report,
)
from qwell.discretize import build_grid


def test_count_nodes_examples():
    assert count_nodes([1.0, 0.5, 0.1]) == 0
    assert count_nodes([1.0, -1.0, 1.0]) == 2


def test_count_nodes_node_on_grid_point():
    assert count_nodes([0.5, 1.0, 0.0, -1.0, -0.5]) == 1


def test_count_nodes_ignores_tail_noise():
    assert count_nodes([1e-9, -1e-9, 1.0, 0.5, 1e-8, -1e-8]) == 0


def test_parity_simple():
    g = build_grid(-2, 2, 4)  # points -1, 0, 1
    assert classify_parity([1.0, 2.0, 1.0], g) is Parity.EVEN
    assert classify_parity([1.0, 0.0, -1.0], g) is Parity.ODD
    assert classify_parity([1.0, 2.0, 3.0], g) is Parity.NONE


def test_parity_asymmetric_grid(solved):
    with pytest.raises(AsymmetricGridError):
        classify_parity([1.0, 2.0, 1.0], build_grid(0, 4, 4))
    sp = solved("radial", 3.0, 0.1, 3)
    with pytest.raises(AsymmetricGridError):
        classify_parity(sp.states[0], sp.grid)
    assert {d.parity for d in describe_states(sp)} == {Parity.NONE}


def test_ground_even_first_excited_odd(solved):
    assert classify_parity(solved("well", 1.0, 1.0, 3).states[0], solved("well", 1.0, 1.0, 3).grid) is Parity.EVEN
    sp = solved("well", 3.0, 0.1, 8)
    assert classify_parity(sp.states[1], sp.grid) is Parity.ODD


@pytest.mark.parametrize("v0, alpha, n", [(3.0, 0.1, 8), (100.0, 1.0, 13), (10.0, 1.0, 5)])
def test_node_theorem_and_parity_alternation(solved, v0, alpha, n):
    sp = solved("well", v0, alpha, n)
    desc = describe_states(sp)
    for d in desc[: sp.bound_count]:
        assert d.nodes == d.index
        assert d.parity is (Parity.EVEN if d.index % 2 == 0 else Parity.ODD)
        assert d.bound


def test_double_well_report_fields():
    rep = double_well_report(3.0, 1.0)
    assert rep.delta_e > 0
    assert rep.delta_e == pytest.approx(rep.e2 - rep.e1)
    assert rep.period * rep.delta_e == pytest.approx(2 * math.pi, rel=1e-12)
    assert rep.decoupling_ratio == pytest.approx(rep.delta_e / (rep.e3 - rep.e2))
    assert rep.e3_bound is False
    pair = [d.parity for d in describe_states(rep.spectrum)[:2]]
    assert pair == [Parity.EVEN, Parity.ODD]


def test_period_synthetic():
    assert 2 * math.pi / 0.1 == pytest.approx(62.8319, abs=1e-3)


def test_double_well_barrier_trend_and_qubit():
    deep = double_well_report(10.0, 1.0)
    shallow = double_well_report(3.0, 1.0)
    assert deep.delta_e < shallow.delta_e
    assert deep.decoupling_ratio < 1
    assert deep.e3_bound


def test_double_well_ground_leaks_into_barrier():
    rep = double_well_report(10.0, 1.0)
    sp = rep.spectrum
    psi0 = sp.states[0]
    inside = np.abs(sp.grid.points) < 1.0
    assert np.max(np.abs(psi0[inside])) > 1e-6 * np.max(np.abs(psi0))
    # and the peaks sit in the wells, not at the centre
    assert abs(sp.grid.points[np.argmax(psi0)]) > 0.5


def test_double_well_two_states_only():
    rep = double_well_report(3.0, 1.0, n_states=2)
    assert rep.e3 is None and rep.decoupling_ratio is None


def test_double_well_too_shallow():
    with pytest.raises(InsufficientBoundStatesError):
        double_well_report(0.01, 1.0)
