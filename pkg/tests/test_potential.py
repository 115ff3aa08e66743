import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from qwell.potential import (
    PotentialDomainError,
    PotentialKind,
    PotentialSpec,
    UnsupportedKindError,
    bound_state_sufficient,
    evaluate,
    integral_over_line,
)

positive = st.floats(min_value=1e-2, max_value=1e2)
position = st.floats(min_value=-50, max_value=50)


def test_well_at_origin():
    assert evaluate(PotentialSpec.well(1, 1), 0.0) == -1.0


def test_well_far_tail():
    spec = PotentialSpec.well(1, 1)
    assert abs(evaluate(spec, 10.0)) < 1e-43
    assert abs(evaluate(spec, -10.0)) < 1e-43


def test_double_well_values():
    spec = PotentialSpec.double_well(3, 1)
    assert evaluate(spec, 0.0) == 0.0
    assert evaluate(spec, 1.0) == pytest.approx(-3 / math.e)
    assert evaluate(spec, 1.0) == pytest.approx(-1.1036, abs=1e-4)


def test_barrier_peak():
    assert evaluate(PotentialSpec.barrier(10, 1), 0.0) == 10.0


def test_radial_centrifugal():
    spec = PotentialSpec.radial(3, 0.5, l=2)
    x = 1.3
    assert evaluate(spec, x) == pytest.approx(-3 * math.exp(-0.5 * x * x) + 3.0 / (x * x))


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_radial_domain(x):
    with pytest.raises(PotentialDomainError):
        evaluate(PotentialSpec.radial(1, 1), x)


@pytest.mark.parametrize("v0, alpha", [(0, 1), (-1, 1), (1, 0), (1, -2), (math.inf, 1)])
def test_parameter_errors(v0, alpha):
    with pytest.raises(ValueError):
        PotentialSpec.well(v0, alpha)


def test_l_only_for_radial():
    with pytest.raises(ValueError):
        PotentialSpec(PotentialKind.GAUSSIAN_WELL, 1, 1, l=1)
    with pytest.raises(ValueError):
        PotentialSpec.radial(1, 1, l=-1)


def test_array_evaluation():
    x = np.linspace(-3, 3, 7)
    v = evaluate(PotentialSpec.well(2, 0.5), x)
    assert v.shape == x.shape
    np.testing.assert_allclose(v, -2 * np.exp(-0.5 * x * x))


@given(positive, positive, position)
def test_full_line_even(v0, alpha, x):
    for kind in (PotentialKind.GAUSSIAN_WELL, PotentialKind.GAUSSIAN_BARRIER,
                 PotentialKind.DOUBLE_GAUSSIAN_WELL):
        spec = PotentialSpec(kind, v0, alpha)
        assert evaluate(spec, x) == evaluate(spec, -x)


@given(positive, positive, position)
def test_well_plus_barrier_vanishes(v0, alpha, x):
    assert evaluate(PotentialSpec.well(v0, alpha), x) + evaluate(PotentialSpec.barrier(v0, alpha), x) == 0


@given(positive, positive, position)
def test_value_ranges(v0, alpha, x):
    w = evaluate(PotentialSpec.well(v0, alpha), x)
    b = evaluate(PotentialSpec.barrier(v0, alpha), x)
    assert -v0 <= w <= 0
    assert 0 <= b <= v0


def test_integral_examples():
    assert integral_over_line(PotentialSpec.well(1, math.pi)) == pytest.approx(-1.0)
    assert integral_over_line(PotentialSpec.barrier(1, math.pi)) == pytest.approx(1.0)
    assert integral_over_line(PotentialSpec.double_well(2, 1)) == pytest.approx(-1.7725, abs=1e-4)


@pytest.mark.parametrize("kind", ["well", "barrier", "double_well"])
@pytest.mark.parametrize("v0, alpha", [(2, 1), (1, 0.1), (5, 3.7)])
def test_integral_against_quadrature(kind, v0, alpha):
    spec = getattr(PotentialSpec, kind)(v0, alpha)
    half = 40 / math.sqrt(alpha)
    pts = np.linspace(-half, half, 41)[1:-1]
    oracle, _ = quad(lambda x: evaluate(spec, x), -half, half, points=pts, epsabs=1e-14,
                     epsrel=1e-12, limit=500)
    assert integral_over_line(spec) == pytest.approx(oracle, rel=1e-8)


def test_integral_radial_unsupported():
    with pytest.raises(UnsupportedKindError):
        integral_over_line(PotentialSpec.radial(1, 1))


@given(positive, positive)
def test_sufficiency_predicate(v0, alpha):
    assert bound_state_sufficient(PotentialSpec.well(v0, alpha))
    assert bound_state_sufficient(PotentialSpec.double_well(v0, alpha))
    assert not bound_state_sufficient(PotentialSpec.barrier(v0, alpha))
