"""Scikit-learn style estimator facade over the fractal spline engine."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from ._validation import as_float_vector
from .data import HermiteData, build_partition
from .evaluate import (
    evaluate_pointwise,
    sample_derivative_fif,
    sample_fif,
    sample_second_derivative_fif,
)
from .ifs import IFSParameters, build_pieces
from .shape import auto_select


class FractalRationalSpline(RegressorMixin, BaseEstimator):
    """Rational cubic fractal spline interpolator with a fit/predict surface.

    Fitting consumes the knot/value pairs (and optionally derivative values;
    otherwise the arithmetic mean method fills them in) and caches the
    per-interval rational coefficients.  Prediction evaluates the fixed
    point of the interpolation operator at arbitrary points inside the knot
    span by following inverse-map orbits, so it composes with pipelines and
    model-selection utilities that expect the estimator protocol.

    Parameters
    ----------
    alpha : array-like or None
        Per-interval scaling factors.  None means zero scalings, the
        classical rational spline.  Ignored when ``shape`` is set.
    u, v : float or array-like
        Rationality/tension parameters of the denominator.  Ignored when
        ``shape`` is set except that ``u`` seeds the auto-selection.
    smoothness_order : int
        1 or 2; the strictness exponent of the scaling bound.
    shape : {None, "monotone", "convex"}
        When set, parameters are auto-selected inside the corresponding
        sufficient region instead of taken from ``alpha``/``v``.
    margin : float
        Back-off factor in (0, 1) used by shape auto-selection.
    """

    def __init__(self, alpha=None, u=1.0, v=0.0, smoothness_order=1,
                 shape=None, margin=0.9):
        self.alpha = alpha
        self.u = u
        self.v = v
        self.smoothness_order = smoothness_order
        self.shape = shape
        self.margin = margin

    def fit(self, X, y, derivatives=None):
        knots = as_float_vector(X, "X")
        values = as_float_vector(y, "y")
        data = HermiteData(knots, values, derivatives)
        data = data.with_estimated_derivatives()
        if self.shape is not None:
            params = auto_select(data, self.shape, margin=self.margin, u=self.u)
        else:
            n = data.n_intervals
            alpha = np.zeros(n) if self.alpha is None else self.alpha
            params = IFSParameters(
                np.broadcast_to(np.asarray(alpha, dtype=float), (n,)).copy(),
                np.broadcast_to(np.asarray(self.u, dtype=float), (n,)).copy(),
                np.broadcast_to(np.asarray(self.v, dtype=float), (n,)).copy(),
                smoothness_order=self.smoothness_order,
            )
        self.data_ = data
        self.params_ = params
        self.partition_ = build_partition(data)
        self.pieces_ = build_pieces(data, params, self.partition_)
        self.n_features_in_ = 1
        return self

    def _check_fitted(self):
        if not hasattr(self, "data_"):
            raise NotFittedError("this FractalRationalSpline instance is not fitted yet")

    def predict(self, X):
        """Interpolant values at points within the fitted knot span."""
        self._check_fitted()
        pts = as_float_vector(X, "X")
        return evaluate_pointwise(self.data_, self.params_, pts)

    def predict_derivative(self, X, order: int = 1):
        """Derivative fractal function values (order 1 or 2) at query points."""
        self._check_fitted()
        if order not in (1, 2):
            raise ValueError("order must be 1 or 2")
        pts = as_float_vector(X, "X")
        return evaluate_pointwise(self.data_, self.params_, pts, order=order)

    def sample(self, depth=None, order: int = 0, max_points=None):
        """Exact recursion samples of the interpolant or a derivative function."""
        self._check_fitted()
        fn = {0: sample_fif, 1: sample_derivative_fif, 2: sample_second_derivative_fif}[order]
        return fn(self.data_, self.params_, depth=depth, max_points=max_points)
