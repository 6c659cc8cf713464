import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractalspline import (
    HermiteData,
    MalformedDataError,
    build_partition,
    estimate_derivatives,
)

from conftest import (
    CONVEX_KNOTS,
    CONVEX_VALUES,
    MONOTONE_KNOTS,
    MONOTONE_VALUES,
)


class TestHermiteData:
    def test_two_knots_rejected(self):
        with pytest.raises(MalformedDataError):
            HermiteData([0.0, 1.0], [0.0, 1.0])

    def test_non_increasing_knots_name_the_index(self):
        with pytest.raises(MalformedDataError, match=r"knots\[1\]"):
            HermiteData([0.0, 2.0, 1.0, 3.0], [0.0, 1.0, 2.0, 3.0])

    def test_near_duplicate_knots_rejected(self):
        with pytest.raises(MalformedDataError, match="nearly duplicate"):
            HermiteData([0.0, 0.5, 0.5 + 1e-14, 1.0], [0.0, 1.0, 2.0, 3.0])

    def test_length_mismatch(self):
        with pytest.raises(MalformedDataError):
            HermiteData([0.0, 1.0, 2.0], [0.0, 1.0])
        with pytest.raises(MalformedDataError):
            HermiteData([0.0, 1.0, 2.0], [0.0, 1.0, 2.0], [1.0, 1.0])

    def test_non_finite_rejected(self):
        with pytest.raises(MalformedDataError):
            HermiteData([0.0, 1.0, np.inf], [0.0, 1.0, 2.0])

    def test_immutability(self):
        data = HermiteData([0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
        with pytest.raises(ValueError):
            data.knots[0] = 5.0

    def test_json_round_trip(self):
        data = HermiteData(MONOTONE_KNOTS, MONOTONE_VALUES).with_estimated_derivatives()
        again = HermiteData.from_json(json.dumps(data.to_dict()))
        np.testing.assert_array_equal(again.knots, data.knots)
        np.testing.assert_array_equal(again.derivatives, data.derivatives)

    def test_null_derivatives_trigger_estimation(self):
        doc = {"knots": [0.0, 1.0, 2.0], "values": [0.0, 2.0, 4.0], "derivatives": None}
        data = HermiteData.from_dict(doc).with_estimated_derivatives()
        np.testing.assert_allclose(data.derivatives, 2.0)


class TestPartition:
    def test_map_slopes_on_monotone_knots(self, monotone_data):
        part = build_partition(monotone_data)
        np.testing.assert_allclose(part.map_slopes, [0.15152, 0.51515, 0.33333], atol=5e-6)

    def test_widths_on_convex_knots(self, convex_data):
        part = build_partition(convex_data)
        np.testing.assert_allclose(part.interval_widths, [0.5, 0.25, 0.25])
        assert part.total_width == 1.0

    def test_endpoint_conditions(self, monotone_data):
        part = build_partition(monotone_data)
        x = monotone_data.knots
        for n in range(part.n_intervals):
            assert part.apply_map(n, x[0]) == pytest.approx(x[n], abs=1e-13)
            assert part.apply_map(n, x[-1]) == pytest.approx(x[n + 1], abs=1e-13)

    def test_slope_identity(self, monotone_data):
        part = build_partition(monotone_data)
        np.testing.assert_allclose(
            part.slopes * part.interval_widths, np.diff(monotone_data.values))

    @given(st.lists(st.floats(-50.0, 50.0), min_size=3, max_size=12, unique=True))
    @settings(max_examples=60, deadline=None)
    def test_map_slopes_partition_unity(self, raw_knots):
        knots = np.sort(np.asarray(raw_knots))
        if np.min(np.diff(knots)) <= 1e-9 * (knots[-1] - knots[0]):
            return
        data = HermiteData(knots, np.zeros(knots.size))
        part = build_partition(data)
        assert np.all(part.map_slopes > 0)
        assert np.all(part.map_slopes < 1)
        assert abs(part.map_slopes.sum() - 1.0) < 1e-12


class TestDerivativeEstimation:
    def test_monotone_reference_values(self):
        data = HermiteData(MONOTONE_KNOTS, MONOTONE_VALUES)
        d = estimate_derivatives(data)
        np.testing.assert_allclose(
            d, [501.6738, 326.3262, 262.7807, 566.3102], atol=5e-5)

    def test_convex_reference_values(self):
        data = HermiteData(CONVEX_KNOTS, CONVEX_VALUES)
        d = estimate_derivatives(data)
        np.testing.assert_allclose(d, [2.3347, 32.7505, 47.3920, 61.4672], atol=5e-5)

    def test_collinear_data_gives_common_slope(self):
        x = np.array([0.0, 0.3, 1.1, 2.0, 2.5])
        data = HermiteData(x, 2.0 * x)
        np.testing.assert_allclose(estimate_derivatives(data), 2.0, rtol=1e-14)

    @given(st.floats(-5.0, 5.0), st.floats(-10.0, 10.0))
    @settings(max_examples=40, deadline=None)
    def test_collinear_property(self, slope, intercept):
        x = np.array([0.0, 0.7, 1.3, 2.9])
        data = HermiteData(x, slope * x + intercept)
        np.testing.assert_allclose(estimate_derivatives(data), slope, atol=1e-10)

    def test_no_silent_clamping(self):
        # monotone values whose endpoint extrapolation goes negative stay raw
        x = np.array([0.0, 1.0, 2.0, 3.0])
        y = np.array([0.0, 0.001, 0.02, 10.0])
        d = estimate_derivatives(HermiteData(x, y))
        assert d[0] < 0  # kept, not clamped

    def test_require_derivatives(self):
        data = HermiteData([0.0, 1.0, 2.0], [0.0, 1.0, 4.0])
        with pytest.raises(MalformedDataError):
            data.require_derivatives()
        assert data.with_estimated_derivatives().derivatives is not None
