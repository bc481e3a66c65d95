import math

import numpy as np
import pytest

from blochcurve import (
    CallableField,
    FieldSample,
    InvalidArgumentError,
    ScenarioParams,
    TwoParameterField,
    default_derivative_step,
    field_derivative,
    h_parallel_sq,
    h_transverse_sq,
    parallel_transverse_ratio,
    two_parameter_field,
)

P11 = ScenarioParams(1.0, 1.0)


class TestScenarioParams:
    def test_accepts_geodesic_limit(self):
        assert ScenarioParams(2.0, 0.0).nu0 == 0.0

    @pytest.mark.parametrize("w, n", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.1)])
    def test_rejects_bad_rates(self, w, n):
        with pytest.raises(InvalidArgumentError):
            ScenarioParams(w, n)

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidArgumentError):
            ScenarioParams(math.inf, 1.0)


class TestBuiltinField:
    def test_value_at_origin(self):
        s = two_parameter_field(P11, 0.0)
        assert s.h0 == 0.0
        assert np.allclose(s.h, (0.0, 1.0, 0.0), atol=1e-15)

    def test_z_component_peak(self):
        # h_z = (nu0/2) sin^2(2 w t) peaks at t = pi/(4 w)
        s = two_parameter_field(P11, math.pi / 4.0)
        assert s.h[2] == pytest.approx(0.5, abs=1e-15)

    def test_traceless(self):
        for t in np.linspace(0.0, 7.0, 23):
            assert two_parameter_field(P11, float(t)).h0 == 0.0

    @pytest.mark.parametrize("params", [P11, ScenarioParams(2.0, 0.7)])
    def test_hand_derivative_matches_stencil(self, params):
        # chain-rule derivative against a 4th-order central stencil
        dt = 1e-4
        for t in (0.1, 0.55, 1.3, 2.9):
            def h_of(u, p=params):
                return two_parameter_field(p, u).h

            stencil = (
                h_of(t - 2 * dt) - 8.0 * h_of(t - dt)
                + 8.0 * h_of(t + dt) - h_of(t + 2 * dt)
            ) / (12.0 * dt)
            analytic = two_parameter_field(params, t).h_dot
            assert np.max(np.abs(analytic - stencil)) <= 1e-10

    def test_spec_object_delegates(self):
        spec = TwoParameterField(P11)
        direct = two_parameter_field(P11, 0.8)
        via_spec = spec.sample(0.8)
        assert np.array_equal(via_spec.h, direct.h)
        assert np.array_equal(via_spec.h_dot, direct.h_dot)
        assert np.array_equal(spec.h_value(0.8), direct.h)

    def test_rejects_nonfinite_time(self):
        with pytest.raises(InvalidArgumentError):
            two_parameter_field(P11, math.nan)


class TestFieldSample:
    def test_rejects_nonfinite_components(self):
        with pytest.raises(InvalidArgumentError):
            FieldSample(0.0, 0.0, (math.inf, 0.0, 0.0), (0.0, 0.0, 0.0))

    def test_coerces_to_arrays(self):
        s = FieldSample(0.0, 0.5, [1, 2, 3], [0, 0, 0])
        assert s.h.dtype == float
        assert s.h.shape == (3,)


class TestCallableField:
    def test_constant_field_has_zero_derivative(self):
        spec = CallableField(h=lambda t: (0.3, -1.0, 2.0))
        assert np.max(np.abs(spec.sample(1.7).h_dot)) <= 1e-12

    def test_linear_field_derivative(self):
        spec = CallableField(h=lambda t: (t, 0.0, 0.0))
        assert np.allclose(spec.sample(0.9).h_dot, (1.0, 0.0, 0.0), atol=1e-10)

    def test_stencil_accuracy_on_smooth_field(self):
        spec = CallableField(h=lambda t: (math.sin(t), t * t, 1.0))
        for t in (0.2, 1.0, 2.5):
            expected = (math.cos(t), 2.0 * t, 0.0)
            assert np.max(np.abs(spec.sample(t).h_dot - expected)) <= 1e-8

    def test_analytic_derivative_wins_when_given(self):
        spec = CallableField(
            h=lambda t: (math.sin(t), 0.0, 0.0),
            h_dot=lambda t: (math.cos(t), 0.0, 0.0),
        )
        assert spec.sample(0.4).h_dot[0] == math.cos(0.4)

    def test_scalar_part_constant_or_callable(self):
        assert CallableField(h=lambda t: (1, 0, 0), h0=0.7).sample(2.0).h0 == 0.7
        varying = CallableField(h=lambda t: (1, 0, 0), h0=lambda t: 2.0 * t)
        assert varying.sample(3.0).h0 == 6.0

    def test_rejects_bad_step(self):
        with pytest.raises(InvalidArgumentError):
            CallableField(h=lambda t: (1, 0, 0), step=0.0)


class TestFieldDerivative:
    def test_builtin_uses_analytic_form(self):
        spec = TwoParameterField(P11)
        assert np.array_equal(
            field_derivative(spec, 1.1), two_parameter_field(P11, 1.1).h_dot
        )

    def test_callable_uses_stencil(self):
        spec = CallableField(h=lambda t: (t ** 3, 0.0, 0.0))
        assert field_derivative(spec, 2.0)[0] == pytest.approx(12.0, abs=1e-8)

    def test_rejects_nonpositive_dt(self):
        with pytest.raises(InvalidArgumentError):
            field_derivative(TwoParameterField(P11), 1.0, dt=-1e-4)

    def test_default_step_scales_with_slow_drives(self):
        assert default_derivative_step(2.0) == 1e-4
        assert default_derivative_step(0.1) == pytest.approx(1e-3)


class TestParallelTransverseSplit:
    def test_decomposition_identity(self):
        # parallel + transverse squares must rebuild |h|^2
        for t in np.linspace(0.0, 3.0, 61):
            h = two_parameter_field(P11, float(t)).h
            total = h_parallel_sq(P11, float(t)) + h_transverse_sq(P11, float(t))
            assert abs(total - float(h @ h)) <= 1e-12

    def test_ratio_vanishes_at_half_period_multiples(self):
        for k in range(5):
            t = k * math.pi / 2.0
            assert parallel_transverse_ratio(P11, t) <= 1e-30

    def test_ratio_peak_value(self):
        # max r^2/4 at t = pi/(4 w)
        for w, n in [(1.0, 1.0), (1.0, 2.0), (0.5, 1.5)]:
            p = ScenarioParams(w, n)
            peak = parallel_transverse_ratio(p, math.pi / (4.0 * w))
            assert peak == pytest.approx(0.25 * (n / w) ** 2, abs=1e-12)

    def test_ratio_pinned_sample(self):
        assert parallel_transverse_ratio(P11, 0.3) == pytest.approx(
            0.024103084945102568, abs=1e-15
        )

    def test_ratio_zero_in_geodesic_limit(self):
        p = ScenarioParams(1.3, 0.0)
        assert parallel_transverse_ratio(p, 0.77) == 0.0

    def test_periodicity(self):
        period = math.pi / 2.0
        for t in (0.1, 0.6, 1.2):
            assert parallel_transverse_ratio(P11, t) == pytest.approx(
                parallel_transverse_ratio(P11, t + 3 * period), abs=1e-10
            )
            assert h_parallel_sq(P11, t) == pytest.approx(
                h_parallel_sq(P11, t + period), abs=1e-10
            )
