import json
import math

import numpy as np

from fractalspline import CurveSamples, IFSParameters, sample_fif
from fractalspline.serialize import (
    format_float,
    order_fit_to_csv,
    samples_to_csv,
    samples_to_svg,
    to_json_text,
)


class TestFloatFormatting:
    def test_round_trip_exactness(self):
        rng = np.random.default_rng(1)
        for x in rng.uniform(-1e6, 1e6, 200):
            assert float(format_float(float(x))) == float(x)
        for x in (0.1, 1.0 / 3.0, math.pi, 1e-300, 5e300, -0.0):
            assert float(format_float(x)) == x

    def test_non_finite_becomes_null(self):
        assert format_float(float("nan")) == "null"
        assert format_float(float("inf")) == "null"


class TestJsonWriter:
    def test_parses_and_round_trips(self):
        payload = {
            "alpha": [0.08, 0.06, 0.15],
            "nested": {"flag": True, "none": None, "text": 'say "hi"\n'},
            "count": 7,
        }
        text = to_json_text(payload)
        back = json.loads(text)
        assert back["alpha"] == payload["alpha"]
        assert back["nested"]["text"] == payload["nested"]["text"]
        assert back["count"] == 7

    def test_numpy_scalars_and_arrays(self):
        text = to_json_text({"a": np.float64(0.1), "b": np.arange(3), "c": np.int32(5)})
        assert json.loads(text) == {"a": 0.1, "b": [0, 1, 2], "c": 5}

    def test_deterministic(self):
        payload = {"x": [1.0 / 3.0, 2.0 / 7.0]}
        assert to_json_text(payload) == to_json_text(payload)


class TestCurveOutput:
    def _samples(self, monotone_data):
        params = IFSParameters([0.08, 0.06, 0.15], [0.1, 0.1, 0.1], [0.09, 15.0, 0.15])
        return sample_fif(monotone_data, params, depth=3)

    def test_csv_two_columns_round_trip(self, monotone_data):
        s = self._samples(monotone_data)
        text = samples_to_csv(s)
        lines = text.strip().split("\n")
        assert lines[0] == "abscissa,ordinate"
        assert len(lines) == len(s) + 1
        x, y = lines[1].split(",")
        assert float(x) == s.abscissae[0]
        assert float(y) == s.ordinates[0]

    def test_json_payload_round_trips_ordinates(self, monotone_data):
        s = self._samples(monotone_data)
        back = json.loads(to_json_text(s.to_dict()))
        assert back["derivative_order"] == 0
        np.testing.assert_array_equal(back["abscissae"], s.abscissae)
        np.testing.assert_array_equal(back["ordinates"], s.ordinates)

    def test_svg_structure(self, monotone_data):
        s = self._samples(monotone_data)
        svg = samples_to_svg(s, knots=monotone_data.knots,
                             knot_values=monotone_data.values)
        assert svg.startswith("<svg")
        assert "<polyline" in svg
        assert svg.count("<circle") == 4
        assert 'viewBox="0 0 800 500"' in svg

    def test_order_fit_csv(self):
        from fractalspline import TARGETS, empirical_order

        fn, dfn = TARGETS["sin"]
        fit = empirical_order(fn, dfn, levels=(3, 4, 5, 6))
        text = order_fit_to_csv(fit)
        lines = text.strip().split("\n")
        assert lines[0] == "level,mesh_size,sup_error,running_slope"
        assert len(lines) == 5
        assert lines[1].endswith(",")  # no running slope at the first level


class TestCurveSamplesValidation:
    def test_rejects_unsorted(self):
        import pytest

        from fractalspline import MalformedDataError

        with pytest.raises(MalformedDataError):
            CurveSamples([0.0, 2.0, 1.0], [0.0, 1.0, 2.0], derivative_order=0)
