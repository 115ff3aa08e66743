import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qwell.potential import PotentialSpec
from qwell.semiclassical import (
    phase_integral,
    stm_paper_formula,
    transmission,
    uncertainty_tunneling_condition,
    wkb_count,
    wkb_levels,
)

# frozen from an mpmath (30 digits) quadrature of 2 * int sqrt(2(V - E)) dx over
# the forbidden interval, and from mpmath.erf for the closed form
T_EXACT_BETA2 = 0.0143872524646832332
T_APPROX_BETA2 = 0.00531123401064150091
T_EXACT_BETA2_UNIT = 0.0822513301740008616  # v0 = alpha = 1


@pytest.mark.parametrize("ratio, n_real, n_levels", [
    (0.5, 1.3, 1), (1.0, 1.6, 1), (10.0, 4.1, 4), (100.0, 11.8, 11),
])
def test_wkb_count_table2(ratio, n_real, n_levels):
    c = wkb_count(ratio, 1.0)
    assert c.n_real == pytest.approx(n_real, abs=0.05)
    assert c.n_levels == n_levels


def test_wkb_count_limits():
    # delta-function limit: n_real -> 1/2 as the well narrows at fixed depth
    assert wkb_count(1.0, 1e12).n_real == pytest.approx(0.5, abs=1e-5)
    assert wkb_count(1e12, 1.0).n_real > 1e5


@given(st.floats(min_value=1e-3, max_value=1e3), st.floats(min_value=1e-3, max_value=1e3))
def test_wkb_count_invariants(v0, alpha):
    c = wkb_count(v0, alpha)
    assert c.n_real > 0.5
    assert c.n_levels == math.floor(c.n_real)


def test_phase_integral_harmonic_limit():
    # near the bottom the well is harmonic with omega = sqrt(2 v0 alpha); the
    # phase integral of a harmonic well is pi (E - E_min) / omega
    v0, alpha = 50.0, 1.0
    omega = math.sqrt(2 * v0 * alpha)
    e = -v0 + 1e-3
    assert phase_integral(v0, alpha, e) == pytest.approx(math.pi * 1e-3 / omega, rel=1e-3)


def test_phase_integral_approaches_line_integral():
    v0, alpha = 10.0, 1.0
    limit = (wkb_count(v0, alpha).n_real - 0.5) * math.pi
    assert phase_integral(v0, alpha, -1e-12 * v0) == pytest.approx(limit, rel=1e-4)


def test_wkb_levels_count_matches():
    levels = wkb_levels(PotentialSpec.well(10.0, 1.0), 10)
    assert levels.size == wkb_count(10.0, 1.0).n_levels


def test_wkb_levels_quantised():
    spec = PotentialSpec.well(3.0, 0.1)
    levels = wkb_levels(spec, 3)
    for n, e in enumerate(levels, start=1):
        assert phase_integral(3.0, 0.1, e) == pytest.approx((n - 0.5) * math.pi, abs=1e-8)


def test_wkb_ground_close_to_numerical(solved):
    e1 = wkb_levels(PotentialSpec.well(3.0, 0.1), 1)[0]
    numerical = solved("well", 3.0, 0.1, 8).energies[0]
    assert abs(e1 - numerical) <= 0.05 * abs(numerical)
    assert abs(e1 - (-2.6316)) <= 0.05 * 2.6316


def test_wkb_levels_monotone():
    levels = wkb_levels(PotentialSpec.well(100.0, 1.0), 15)
    assert levels.size == 11
    assert np.all(np.diff(levels) > 0) and levels[-1] < 0 and levels[0] > -100


def test_wkb_levels_only_for_well():
    with pytest.raises(ValueError):
        wkb_levels(PotentialSpec.double_well(3.0, 1.0), 2)


def test_transmission_near_top():
    t = transmission(1.0, 1.0, 1.0 - 1e-12)
    assert t.t_exact == pytest.approx(1.0, abs=1e-4)
    assert t.t_approx == pytest.approx(1.0, abs=1e-4)


def test_transmission_frozen_values():
    v0 = 2.883
    t = transmission(v0, 1.0, v0 / 2)
    assert t.beta == 2.0
    assert t.t_exact == pytest.approx(T_EXACT_BETA2, rel=1e-8)
    assert t.t_approx == pytest.approx(T_APPROX_BETA2, rel=1e-12)
    assert t.t_exact == pytest.approx(1.5e-2, rel=0.05)
    assert t.t_approx == pytest.approx(5e-3, rel=0.1)
    assert transmission(1.0, 1.0, 0.5).t_exact == pytest.approx(T_EXACT_BETA2_UNIT, rel=1e-8)


def test_transmission_fields():
    t = transmission(2.0, 0.5, 0.5)
    assert t.beta == 4.0
    assert t.turning_points == pytest.approx((-math.sqrt(math.log(4) / 0.5), math.sqrt(math.log(4) / 0.5)))
    assert t.t_exact == pytest.approx(t.theta_exact**-2)
    assert t.t_approx == pytest.approx(t.theta_approx**-2)


BETAS = [1.01, 1.5, 2, 3, 4, 5]


@pytest.mark.parametrize("ratio", [0.3, 1.0, 2.883, 20.0])
def test_transmission_monotone_and_ordered(ratio):
    results = [transmission(ratio, 1.0, ratio / b) for b in BETAS]
    exact = [r.t_exact for r in results]
    approx = [r.t_approx for r in results]
    assert all(b <= a for a, b in zip(exact, exact[1:]))
    assert all(b <= a for a, b in zip(approx, approx[1:]))
    for r in results:
        assert 1.0 <= r.theta_exact <= r.theta_approx
        assert 0 < r.t_approx <= r.t_exact <= 1


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1.001, max_value=50), st.floats(min_value=0.1, max_value=10),
       st.floats(min_value=0.1, max_value=10))
def test_transmission_scale_invariant(beta, v0, alpha):
    base = transmission(v0, alpha, v0 / beta)
    scaled = transmission(4 * v0, 4 * alpha, 4 * v0 / beta)
    assert scaled.t_exact == pytest.approx(base.t_exact, rel=1e-8, abs=1e-300)


@pytest.mark.parametrize("e", [0.0, -1.0, 1.0, 2.0])
def test_transmission_rejects(e):
    with pytest.raises(ValueError):
        transmission(1.0, 1.0, e)


def test_stm_formula():
    assert stm_paper_formula((0.6 * 2.83) ** 2) == pytest.approx(0.024, abs=1e-3)
    assert stm_paper_formula(2.883) == pytest.approx(0.024, abs=1e-3)
    assert math.floor(math.log10(stm_paper_formula(0.36 * 18.9**2))) == -11
    assert stm_paper_formula(1e-300) == pytest.approx(1.0)


def test_uncertainty_condition():
    assert uncertainty_tunneling_condition(1.5, 8.0, 1.0)
    assert not uncertainty_tunneling_condition(2.0, 8.0, 1.0)
    assert uncertainty_tunneling_condition(2.0, 8.000001, 1.0)


def test_wkb_quantum_number_maps_to_node_index(solved):
    # WKB level n (n = 1, 2, ...) pairs with the numerical state having n - 1 nodes
    levels = wkb_levels(PotentialSpec.well(100.0, 1.0), 11)
    numerical = solved("well", 100.0, 1.0, 13).energies[:11]
    assert np.max(np.abs(levels - numerical)) < 0.15
