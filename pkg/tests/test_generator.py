"""Generating-function route: series evaluation, ODE integration of
dx/dq = -f(x), and dispatch to closed-form models."""

import numpy as np
import pytest

from anhosc.errors import (
    DivergenceError,
    InvalidParameterError,
    UnsupportedFormError,
)
from anhosc.generator import (
    FORM_CONSTANT,
    FORM_LINEAR,
    FORM_PARABOLIC,
    FORM_SQUARED_LINEAR,
    ExpansionRangeWarning,
    GeneratingSeries,
    closed_form_from_series,
    eval_generating_function,
    superpotential_from_series,
)
from anhosc.models import (
    GENERALIZED_KRATZER_FUES,
    GENERALIZED_MORSE,
    HARMONIC,
    WEI_HUA,
    eval_superpotential,
    riccati_potential,
)
from anhosc.numerics import SampledFunction, differentiate, make_grid


class TestSeries:
    def test_linear_value(self):
        s = GeneratingSeries(FORM_LINEAR, c0=0.5, c1=1.0)
        assert abs(eval_generating_function(s, 0.5) - 1.0) < 1e-15

    def test_squared_linear_value(self):
        s = GeneratingSeries(FORM_SQUARED_LINEAR, c0=0.75, c1=0.5)
        assert abs(eval_generating_function(s, 0.5) - 1.0) < 1e-15

    def test_constant_value(self):
        s = GeneratingSeries(FORM_CONSTANT)
        assert eval_generating_function(s, -17.3) == 1.0

    def test_default_initial_condition(self):
        s = GeneratingSeries(FORM_LINEAR, c0=0.5, c1=1.0)
        assert s.initial_value() == (1.0 - 0.5) / 1.0
        assert GeneratingSeries(FORM_CONSTANT).initial_value() == 0.0

    def test_rejects_zero_c1(self):
        with pytest.raises(InvalidParameterError):
            GeneratingSeries(FORM_LINEAR, c0=0.5, c1=0.0)

    def test_rejects_zero_c2_for_parabolic(self):
        with pytest.raises(InvalidParameterError):
            GeneratingSeries(FORM_PARABOLIC, c0=0.2, c1=1.0, c2=0.0)

    def test_rejects_unsupported_form(self):
        with pytest.raises(UnsupportedFormError):
            GeneratingSeries("cubic", c0=0.5, c1=1.0)

    def test_rejects_nonpositive_f_at_start(self):
        with pytest.raises(InvalidParameterError):
            GeneratingSeries(FORM_LINEAR, c0=2.0, c1=1.0, x0=-3.0)


class TestIntegration:
    def test_requires_grid_from_zero(self):
        s = GeneratingSeries(FORM_CONSTANT)
        with pytest.raises(InvalidParameterError):
            superpotential_from_series(s, make_grid(-1.0, 1.0, 101))

    def test_first_sample_is_initial_condition(self):
        s = GeneratingSeries(FORM_LINEAR, c0=0.5, c1=1.0)
        out = superpotential_from_series(s, make_grid(0.0, 1.0, 101))
        assert out.values[0] == s.initial_value()

    def test_constant_gives_straight_line(self):
        s = GeneratingSeries(FORM_CONSTANT)
        with pytest.warns(ExpansionRangeWarning):
            out = superpotential_from_series(s, make_grid(0.0, 3.0, 301))
        np.testing.assert_allclose(out.values, -make_grid(0.0, 3.0, 301).points(), atol=1e-13)

    def test_linear_matches_closed_form(self):
        s = GeneratingSeries(FORM_LINEAR, c0=0.5, c1=1.0)
        grid = make_grid(0.0, 5.0, 5001)
        out = superpotential_from_series(s, grid)
        closed = np.exp(-grid.points()) - 0.5
        assert np.max(np.abs(out.values - closed)) < 1e-8

    def test_divergence_toward_pole(self):
        # c1 < 0 puts the 1/(c1 q + 1) pole at positive q.
        s = GeneratingSeries(FORM_SQUARED_LINEAR, c0=0.75, c1=-0.5, x0=0.5)
        with pytest.raises(DivergenceError):
            superpotential_from_series(s, make_grid(0.0, 5.0, 5001))


class TestDispatch:
    def test_constant_maps_to_harmonic(self):
        assert closed_form_from_series(GeneratingSeries(FORM_CONSTANT)).family == HARMONIC

    def test_linear_maps_to_generalized_morse(self):
        m = closed_form_from_series(GeneratingSeries(FORM_LINEAR, c0=0.5, c1=1.0))
        assert m.family == GENERALIZED_MORSE
        assert abs(m.params.x_e - 0.5) < 1e-15
        assert abs(m.params.s - 1.0) < 1e-15

    def test_squared_linear_maps_to_generalized_kratzer(self):
        m = closed_form_from_series(GeneratingSeries(FORM_SQUARED_LINEAR, c0=0.75, c1=0.5))
        assert m.family == GENERALIZED_KRATZER_FUES
        assert abs(m.params.s) < 1e-15

    def test_parabolic_maps_to_wei_hua(self):
        m = closed_form_from_series(GeneratingSeries(FORM_PARABOLIC, c0=0.2, c1=1.0, c2=0.5))
        assert m.family == WEI_HUA

    def test_negative_c1_rejected(self):
        with pytest.raises(InvalidParameterError):
            closed_form_from_series(GeneratingSeries(FORM_LINEAR, c0=0.5, c1=-1.0))

    def test_constructor_errors_propagate(self):
        series = GeneratingSeries(FORM_SQUARED_LINEAR, c0=0.75, c1=1.5)
        with pytest.raises(InvalidParameterError):
            closed_form_from_series(series)


ROUND_TRIP_CASES = [
    GeneratingSeries(FORM_LINEAR, c0=0.5, c1=1.0),
    GeneratingSeries(FORM_PARABOLIC, c0=0.2, c1=1.0, c2=0.5),
    GeneratingSeries(FORM_SQUARED_LINEAR, c0=0.75, c1=0.5),
]


@pytest.mark.parametrize("series", ROUND_TRIP_CASES, ids=lambda s: s.form)
def test_round_trip_against_closed_form(series):
    grid = make_grid(0.0, 5.0, 5001)
    numeric = superpotential_from_series(series, grid)
    model = closed_form_from_series(series)
    closed = eval_superpotential(model, grid.points())
    assert np.max(np.abs(numeric.values - closed)) < 1e-7


@pytest.mark.parametrize("series", ROUND_TRIP_CASES, ids=lambda s: s.form)
def test_riccati_closure_of_numeric_superpotential(series):
    # (x^2 + x')/2 from the integrated superpotential, derivative by finite
    # differences, must match the dispatched model's Riccati potential.
    grid = make_grid(0.0, 5.0, 5001)
    numeric = superpotential_from_series(series, grid)
    dx = differentiate(SampledFunction(grid, numeric.values), 1).values
    lhs = 0.5 * (numeric.values**2 + dx)
    model = closed_form_from_series(series)
    rhs = riccati_potential(model, grid.points())
    assert np.max(np.abs(lhs - rhs)) < 1e-5


def test_range_warning_set_when_x_leaves_unit_interval():
    s = GeneratingSeries(FORM_LINEAR, c0=3.0, c1=1.0, x0=2.0)
    with pytest.warns(ExpansionRangeWarning):
        superpotential_from_series(s, make_grid(0.0, 1.0, 101))
