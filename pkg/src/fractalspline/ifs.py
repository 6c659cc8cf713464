"""IFS parameters, admissibility validation, and per-interval rational coefficients.

Each subinterval carries an affine contraction ``L_n`` of the domain and a
vertical map ``F_n(x, y) = alpha_n * y + q_n(x)`` where ``q_n`` is a cubic
over quadratic rational in the normalized coordinate ``theta``:

    q_n(theta) = [U_n (1-theta)^3 + V_n (1-theta)^2 theta
                  + W_n (1-theta) theta^2 + Z_n theta^3]
                 / [u_n + v_n theta (1-theta)].

The interpolant is the fixed point of the induced operator; its first and
second derivative fractal functions obey analogous functional equations
whose inhomogeneous parts are quartic/quintic polynomials over ``Q^2`` and
``h_n Q^3``.  All coefficient arrays are produced here in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import SimpleNamespace

import json

import numpy as np

from ._validation import as_interval_vector, freeze
from .data import HermiteData, Partition, build_partition
from .errors import DenominatorPositivityError, MalformedParametersError


@dataclass(frozen=True)
class IFSParameters:
    """Free design knobs of the fractal spline.

    ``scalings`` (alpha) control the vertical self-reference of each map and
    must satisfy ``|alpha_n| < a_n**smoothness_order`` strictly; ``shape_u``
    and ``shape_v`` are the rationality parameters of the denominator
    ``Q_n(theta) = u_n + v_n theta (1-theta)``.  ``shape_v`` acts as a
    per-interval tension: the piece straightens as ``v_n`` grows.
    """

    scalings: np.ndarray
    shape_u: np.ndarray
    shape_v: np.ndarray
    smoothness_order: int = 1

    def __post_init__(self):
        n = np.asarray(self.scalings, dtype=float).size
        alpha = as_interval_vector(self.scalings, "scalings", n)
        u = as_interval_vector(self.shape_u, "shape_u", n)
        v = as_interval_vector(self.shape_v, "shape_v", n)
        if self.smoothness_order not in (1, 2):
            raise MalformedParametersError(
                f"smoothness_order must be 1 or 2, got {self.smoothness_order!r}"
            )
        object.__setattr__(self, "scalings", freeze(alpha))
        object.__setattr__(self, "shape_u", freeze(u))
        object.__setattr__(self, "shape_v", freeze(v))

    @property
    def n_intervals(self) -> int:
        return self.scalings.size

    @property
    def scaling_norm(self) -> float:
        """|alpha|_inf, the sup-norm contraction factor of the vertical maps."""
        return float(np.max(np.abs(self.scalings))) if self.scalings.size else 0.0

    def contraction_kappa(self, part: Partition) -> float:
        """max_n |alpha_n| / a_n**k; admissible parameter sets have kappa < 1."""
        return float(np.max(np.abs(self.scalings) / part.map_slopes**self.smoothness_order))

    @classmethod
    def classical(cls, n_intervals: int, u=1.0, v=0.0) -> "IFSParameters":
        """Zero-scaling parameters: the non-recursive rational spline."""
        return cls(np.zeros(n_intervals), np.full(n_intervals, float(u)),
                   np.full(n_intervals, float(v)))

    @classmethod
    def from_dict(cls, doc: dict, n_intervals: int) -> "IFSParameters":
        if not isinstance(doc, dict):
            raise MalformedParametersError("parameters document must be a JSON object")
        alpha = doc.get("alpha")
        if alpha is None:
            alpha = np.zeros(n_intervals)
        u = doc.get("u", 1.0)
        v = doc.get("v", 0.0)
        k = doc.get("k", 1)
        if not isinstance(k, int) or isinstance(k, bool):
            raise MalformedParametersError(f"k must be an integer, got {k!r}")
        return cls(
            as_interval_vector(alpha, "alpha", n_intervals),
            as_interval_vector(u, "u", n_intervals),
            as_interval_vector(v, "v", n_intervals),
            smoothness_order=k,
        )

    @classmethod
    def from_json(cls, text, n_intervals: int) -> "IFSParameters":
        return cls.from_dict(json.loads(text), n_intervals)

    def to_dict(self) -> dict:
        return {
            "alpha": self.scalings.tolist(),
            "u": self.shape_u.tolist(),
            "v": self.shape_v.tolist(),
            "k": self.smoothness_order,
        }


@dataclass(frozen=True)
class ParameterViolation:
    interval: int       # 0-based
    constraint: str
    message: str

    def to_dict(self) -> dict:
        return {"interval": self.interval, "constraint": self.constraint, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    """Per-interval admissibility outcome; ``passed`` iff no violations."""

    n_intervals: int
    violations: tuple[ParameterViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations

    def interval_passed(self, n: int) -> bool:
        return all(v.interval != n for v in self.violations)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "n_intervals": self.n_intervals,
            "violations": [v.to_dict() for v in self.violations],
        }

    def raise_if_failed(self):
        if not self.passed:
            lines = "; ".join(
                f"interval {v.interval + 1}: {v.message}" for v in self.violations
            )
            raise MalformedParametersError(f"inadmissible parameters: {lines}")


def validate_parameters(params: IFSParameters, part: Partition) -> ValidationReport:
    """Check admissibility of (alpha, u, v) against the partition.

    Constraints, all strict where noted:

    * ``u_n > 0``;
    * ``v_n > -4 u_n`` so the denominator stays positive on [0, 1];
    * ``|alpha_n| < a_n**k`` (strict even at equality, so the fixed-point
      operator is a contraction).
    """
    if params.n_intervals != part.n_intervals:
        raise MalformedParametersError(
            f"parameter vectors have {params.n_intervals} entries "
            f"but the partition has {part.n_intervals} intervals"
        )
    k = params.smoothness_order
    bound = part.map_slopes**k
    violations = []
    for n in range(part.n_intervals):
        u, v, alpha = params.shape_u[n], params.shape_v[n], params.scalings[n]
        if not u > 0:
            violations.append(ParameterViolation(n, "shape_u_positive", f"u={u:.6g} must be > 0"))
        elif not v > -4.0 * u:
            violations.append(ParameterViolation(
                n, "denominator_positive", f"v={v:.6g} must exceed -4u={-4.0 * u:.6g}"))
        if not abs(alpha) < bound[n]:
            violations.append(ParameterViolation(
                n, "scaling_bound",
                f"|alpha|={abs(alpha):.6g} must be < a_n^{k}={bound[n]:.6g}"))
    return ValidationReport(part.n_intervals, tuple(violations))


@dataclass(frozen=True)
class RationalPiece:
    """Cached closed-form coefficients of one subinterval's rational maps.

    ``cubic_coeffs`` is (U, V, W, Z); ``deriv_coeffs`` the five quartic-basis
    coefficients of the derivative map's numerator; ``second_deriv_coeffs``
    the six quintic-basis coefficients of the second-derivative map's
    numerator.  ``d_star_left/right`` and ``delta_star`` are the
    scaling-adjusted derivative and slope values that the shape conditions
    constrain.
    """

    index: int
    scaling: float
    shape_u: float
    shape_v: float
    width: float
    map_slope: float
    cubic_coeffs: np.ndarray
    deriv_coeffs: np.ndarray
    second_deriv_coeffs: np.ndarray
    d_star_left: float
    d_star_right: float
    delta_star: float

    def __post_init__(self):
        object.__setattr__(self, "cubic_coeffs", freeze(self.cubic_coeffs))
        object.__setattr__(self, "deriv_coeffs", freeze(self.deriv_coeffs))
        object.__setattr__(self, "second_deriv_coeffs", freeze(self.second_deriv_coeffs))


def coefficient_arrays(data: HermiteData, params: IFSParameters,
                       part: Partition | None = None) -> SimpleNamespace:
    """Vectorized closed-form coefficients for all intervals at once.

    Returns a namespace with the cubic coefficients ``U, V, W, Z``, the
    derivative-map numerator rows ``A`` (shape (5, N-1)), the
    second-derivative rows ``B`` (shape (6, N-1)), and the starred
    quantities.  :func:`build_pieces` wraps rows of this into
    :class:`RationalPiece` values; the evaluator consumes it directly.
    """
    if part is None:
        part = build_partition(data)
    y = data.values
    d = data.require_derivatives()
    alpha, u, v = params.scalings, params.shape_u, params.shape_v
    h, a, width = part.interval_widths, part.map_slopes, part.total_width
    delta = part.slopes

    yl, yr = y[:-1], y[1:]
    dl, dr = d[:-1], d[1:]

    U = u * (yl - alpha * y[0])
    V = (3 * u + v) * (yl - alpha * y[0]) + u * h * dl - alpha * u * width * d[0]
    W = (3 * u + v) * (yr - alpha * y[-1]) - u * h * dr + alpha * u * width * d[-1]
    Z = u * (yr - alpha * y[-1])

    # scaling-adjusted derivative/slope values; alpha/a_n = alpha*|I|/h_n
    ds_l = dl - alpha * d[0] / a
    ds_r = dr - alpha * d[-1] / a
    delta_s = delta - alpha * (y[-1] - y[0]) / h

    u2 = u * u
    A = np.stack([
        u2 * ds_l,
        (6 * u2 + 2 * u * v) * delta_s - 2 * u2 * ds_r,
        (12 * u2 + 6 * u * v + v * v) * delta_s - (3 * u2 + u * v) * (ds_l + ds_r),
        (6 * u2 + 2 * u * v) * delta_s - 2 * u2 * ds_l,
        u2 * ds_r,
    ])

    B = np.stack([
        2 * u2 * ((3 * u + v) * delta_s - u * ds_r - (2 * u + v) * ds_l),
        2 * u2 * ((7 * u + 2 * v) * (delta_s - ds_l) + 2 * u * (delta_s - ds_r)),
        2 * u * ((6 * u2 + u * v) * delta_s - (8 * u2 + u * v) * ds_l + 2 * u2 * ds_r),
        2 * u * (-(6 * u2 + u * v) * delta_s + (8 * u2 + u * v) * ds_r - 2 * u2 * ds_l),
        2 * u2 * ((7 * u + 2 * v) * (ds_r - delta_s) - 2 * u * (delta_s - ds_l)),
        2 * u2 * (-(3 * u + v) * delta_s + u * ds_l + (2 * u + v) * ds_r),
    ])

    return SimpleNamespace(
        U=U, V=V, W=W, Z=Z, A=A, B=B,
        d_star_left=ds_l, d_star_right=ds_r, delta_star=delta_s,
        alpha=alpha, u=u, v=v, h=h, a=a, part=part,
    )


def build_pieces(data: HermiteData, params: IFSParameters,
                 part: Partition | None = None) -> list[RationalPiece]:
    """Validate parameters and compute every interval's cached coefficients."""
    if part is None:
        part = build_partition(data)
    validate_parameters(params, part).raise_if_failed()
    c = coefficient_arrays(data, params, part)
    pieces = []
    for n in range(part.n_intervals):
        pieces.append(RationalPiece(
            index=n,
            scaling=float(c.alpha[n]),
            shape_u=float(c.u[n]),
            shape_v=float(c.v[n]),
            width=float(c.h[n]),
            map_slope=float(c.a[n]),
            cubic_coeffs=np.array([c.U[n], c.V[n], c.W[n], c.Z[n]]),
            deriv_coeffs=c.A[:, n].copy(),
            second_deriv_coeffs=c.B[:, n].copy(),
            d_star_left=float(c.d_star_left[n]),
            d_star_right=float(c.d_star_right[n]),
            delta_star=float(c.delta_star[n]),
        ))
    return pieces


def _check_theta(theta):
    theta = np.asarray(theta, dtype=float)
    if np.any((theta < 0.0) | (theta > 1.0)):
        raise ValueError("theta must lie in [0, 1]")
    return theta


def denominator(piece: RationalPiece, theta):
    q = piece.shape_u + piece.shape_v * theta * (1.0 - theta)
    if np.any(q <= 0.0):
        raise DenominatorPositivityError(
            f"denominator not positive on interval {piece.index + 1}; "
            f"u={piece.shape_u:.6g}, v={piece.shape_v:.6g}"
        )
    return q


def q_eval(piece: RationalPiece, theta):
    """Evaluate the rational map ``q_n`` at normalized coordinates in [0, 1].

    Endpoint identities: ``q_eval(0) = y_n - alpha_n y_1`` and
    ``q_eval(1) = y_{n+1} - alpha_n y_N``.
    """
    theta = _check_theta(theta)
    U, V, W, Z = piece.cubic_coeffs
    s = 1.0 - theta
    num = U * s**3 + V * s**2 * theta + W * s * theta**2 + Z * theta**3
    return num / denominator(piece, theta)


def tension_decomposition(piece: RationalPiece, theta):
    """Split ``q_n`` into its affine part and the tension correction.

    The affine part interpolates the scaling-adjusted endpoint values; the
    correction carries all curvature and vanishes pointwise as ``v_n`` grows,
    which is the interval tension property.  ``affine + correction == q_eval``.
    """
    theta = _check_theta(theta)
    U, _, _, Z = piece.cubic_coeffs
    s = 1.0 - theta
    affine = (U * s + Z * theta) / piece.shape_u
    bracket = ((2.0 * theta - 1.0) * piece.delta_star
               + s * piece.d_star_left - theta * piece.d_star_right)
    correction = (piece.shape_u * piece.width * theta * s * bracket
                  / denominator(piece, theta))
    return affine, correction
