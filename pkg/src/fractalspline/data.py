"""Interpolation data, partition geometry, and derivative estimation.

Everything downstream consumes :class:`HermiteData` (knots, values and knot
derivatives) together with the :class:`Partition` derived from the knots:
interval widths ``h_n``, the affine map slopes ``a_n`` and offsets ``b_n``
that send the whole domain onto each subinterval, and the data slopes
``delta_n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from ._validation import (
    as_float_vector,
    freeze,
    require_same_length,
    require_strictly_increasing,
)
from .errors import MalformedDataError

#: Knot gaps below this fraction of the span are rejected as duplicates.
KNOT_GAP_REL_TOL = 1e-12


@dataclass(frozen=True)
class HermiteData:
    """Hermite interpolation problem: knots ``x_i``, values ``y_i``, derivatives ``d_i``.

    ``derivatives`` may be None at construction; call
    :func:`estimate_derivatives` (or :meth:`with_estimated_derivatives`) to
    fill it from the data.
    """

    knots: np.ndarray
    values: np.ndarray
    derivatives: np.ndarray | None = None

    def __post_init__(self):
        knots = as_float_vector(self.knots, "knots", min_len=3)
        values = as_float_vector(self.values, "values")
        require_same_length("knots", knots, "values", values)
        require_strictly_increasing(knots, rel_gap=KNOT_GAP_REL_TOL)
        d = self.derivatives
        if d is not None:
            d = as_float_vector(d, "derivatives")
            require_same_length("knots", knots, "derivatives", d)
            d = freeze(d)
        object.__setattr__(self, "knots", freeze(knots))
        object.__setattr__(self, "values", freeze(values))
        object.__setattr__(self, "derivatives", d)

    @property
    def n_knots(self) -> int:
        return self.knots.size

    @property
    def n_intervals(self) -> int:
        return self.knots.size - 1

    def require_derivatives(self) -> np.ndarray:
        if self.derivatives is None:
            raise MalformedDataError("derivatives are unset; estimate or supply them first")
        return self.derivatives

    def with_derivatives(self, derivatives) -> "HermiteData":
        return HermiteData(self.knots, self.values, derivatives)

    def with_estimated_derivatives(self) -> "HermiteData":
        """Fill derivatives by the arithmetic mean method if not already set."""
        if self.derivatives is not None:
            return self
        return self.with_derivatives(estimate_derivatives(self))

    @classmethod
    def from_json(cls, text: str | bytes) -> "HermiteData":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_dict(cls, doc: dict) -> "HermiteData":
        if not isinstance(doc, dict):
            raise MalformedDataError("data document must be a JSON object")
        try:
            knots = doc["knots"]
            values = doc["values"]
        except KeyError as exc:
            raise MalformedDataError(f"data document missing field {exc.args[0]!r}") from None
        return cls(knots, values, doc.get("derivatives"))

    def to_dict(self) -> dict:
        return {
            "knots": self.knots.tolist(),
            "values": self.values.tolist(),
            "derivatives": None if self.derivatives is None else self.derivatives.tolist(),
        }


@dataclass(frozen=True)
class Partition:
    """Geometry derived from the knots.

    ``map_slopes[n]`` and ``map_offsets[n]`` define the affine contraction
    ``L_n(x) = a_n x + b_n`` taking ``[x_1, x_N]`` onto ``[x_n, x_{n+1}]``,
    so ``L_n(x_1) = x_n`` and ``L_n(x_N) = x_{n+1}``.
    """

    knots: np.ndarray
    interval_widths: np.ndarray   # h_n
    map_slopes: np.ndarray        # a_n = h_n / |I|
    map_offsets: np.ndarray       # b_n
    total_width: float            # |I|
    slopes: np.ndarray            # delta_n = (y_{n+1} - y_n) / h_n

    @property
    def n_intervals(self) -> int:
        return self.interval_widths.size

    def apply_map(self, n, x):
        return self.map_slopes[n] * x + self.map_offsets[n]

    def invert_map(self, n, x):
        return (x - self.map_offsets[n]) / self.map_slopes[n]

    def interval_of(self, x):
        """0-based interval index for each query point (right-closed last interval)."""
        idx = np.searchsorted(self.knots, x, side="right") - 1
        return np.clip(idx, 0, self.n_intervals - 1)

    def local_coordinate(self, x):
        """Global normalized coordinate theta = (x - x_1) / |I| in [0, 1]."""
        return (np.asarray(x, dtype=float) - self.knots[0]) / self.total_width


def build_partition(data: HermiteData) -> Partition:
    """Compute interval widths, affine map coefficients and data slopes."""
    x, y = data.knots, data.values
    width = x[-1] - x[0]
    h = np.diff(x)
    a = h / width
    b = (x[:-1] * x[-1] - x[1:] * x[0]) / width
    delta = np.diff(y) / h
    return Partition(
        knots=data.knots,
        interval_widths=freeze(h),
        map_slopes=freeze(a),
        map_offsets=freeze(b),
        total_width=float(width),
        slopes=freeze(delta),
    )


def estimate_derivatives(data: HermiteData) -> np.ndarray:
    """Estimate knot derivatives by the arithmetic mean method.

    Interior knots get the width-weighted mean of the adjacent slopes,

        d_i = (h_{i-1} delta_i + h_i delta_{i-1}) / (h_{i-1} + h_i),

    and the endpoints the three-point extrapolations

        d_1 = delta_1 + (delta_1 - delta_2) h_1 / (h_1 + h_2),
        d_N = delta_{N-1} + (delta_{N-1} - delta_{N-2}) h_{N-1} / (h_{N-2} + h_{N-1}).

    Estimates are returned raw: no sign clamping is applied even when the
    data is monotone, so shape checks can report violations explicitly.
    """
    part = build_partition(data)
    h, delta = part.interval_widths, part.slopes
    n = data.n_knots
    d = np.empty(n)
    d[1:-1] = (h[:-1] * delta[1:] + h[1:] * delta[:-1]) / (h[:-1] + h[1:])
    d[0] = delta[0] + (delta[0] - delta[1]) * h[0] / (h[0] + h[1])
    d[-1] = delta[-1] + (delta[-1] - delta[-2]) * h[-1] / (h[-2] + h[-1])
    return d
