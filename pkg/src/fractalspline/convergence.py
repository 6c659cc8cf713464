"""A-priori perturbation bound and empirical convergence-order experiments.

The closed-form bound controls the uniform distance between the fractal
interpolant and its zero-scaling classical counterpart in terms of the
scaling norm, the shape-parameter extremes, and the data extremes.  The
order harness refines a smooth target on dyadic meshes with the scaling
rule ``alpha_n = 0.5 * a_n**k`` and fits the error decay slope.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import HermiteData, build_partition
from .errors import DivergentBoundError
from .evaluate import classical_eval, sample_fif
from .ifs import IFSParameters

VS_CLASSICAL = "fif-vs-classical"
VS_TARGET = "target-vs-fif"

#: Desk-scale C^3 targets for the order experiments (value, derivative).
TARGETS = {
    "sin": (np.sin, np.cos),
    "exp": (np.exp, np.exp),
    "xlog": (lambda x: x * np.log1p(x), lambda x: np.log1p(x) + x / (1.0 + x)),
}


@dataclass(frozen=True)
class ErrorBoundReport:
    """Closed-form perturbation bound and the distance actually measured."""

    data_bound: float            # M: |y|_inf + max(|y_1|, |y_N|)
    denominator_floor: float     # s: min_n (u_n + v_n / 4)
    operator_slope_bound: float  # K_0
    alpha_inf: float
    mesh_size: float             # h: max interval width
    perturbation_bound: float
    measured_sup_distance: float
    sample_depth: int

    def to_dict(self) -> dict:
        return {
            "M": self.data_bound,
            "s": self.denominator_floor,
            "K0": self.operator_slope_bound,
            "alpha_inf": self.alpha_inf,
            "h": self.mesh_size,
            "perturbation_bound": self.perturbation_bound,
            "measured_sup_distance": self.measured_sup_distance,
            "sample_depth": self.sample_depth,
        }


def perturbation_bound(data: HermiteData, params: IFSParameters,
                       depth: int = 6, max_points=None) -> ErrorBoundReport:
    """Evaluate the uniform ``g - C`` bound and measure the true distance.

    The bound is

        |alpha|_inf / (s (1 - |alpha|_inf)) * { |u|_inf M
            + 1/4 [ (3|u|_inf + |v|_inf) M
                    + |u|_inf (h |d|_inf + |I| max(|d_1|, |d_N|)) ] }

    with ``M = |y|_inf + max(|y_1|, |y_N|)`` and ``s = min_n (u_n + v_n/4)``
    the uniform floor of the rational denominators.  The measured distance
    compares the recursion samples against the classical spline at the same
    abscissae, which both evaluate exactly.
    """
    part = build_partition(data)
    d = data.require_derivatives()
    y = data.values
    alpha_inf = params.scaling_norm
    if alpha_inf >= 1.0:
        raise DivergentBoundError(f"|alpha|_inf={alpha_inf:.6g} must be < 1 for the bound")
    u_inf = float(np.max(np.abs(params.shape_u)))
    v_inf = float(np.max(np.abs(params.shape_v)))
    s = float(np.min(params.shape_u + 0.25 * params.shape_v))
    m_bound = float(np.max(np.abs(y)) + max(abs(y[0]), abs(y[-1])))
    h = float(np.max(part.interval_widths))
    width = part.total_width
    d_inf = float(np.max(np.abs(d)))
    d_ends = max(abs(d[0]), abs(d[-1]))

    k0 = ((u_inf + 0.25 * (3.0 * u_inf + v_inf)) * max(abs(y[0]), abs(y[-1]))
          + 0.25 * u_inf * width * d_ends) / s
    brace = (u_inf * m_bound
             + 0.25 * ((3.0 * u_inf + v_inf) * m_bound
                       + u_inf * (h * d_inf + width * d_ends)))
    bound = alpha_inf / (s * (1.0 - alpha_inf)) * brace

    samples = sample_fif(data, params, depth=depth, max_points=max_points)
    classical = classical_eval(data, params.shape_u, params.shape_v, samples.abscissae)
    measured = float(np.max(np.abs(samples.ordinates - classical)))

    return ErrorBoundReport(
        data_bound=m_bound,
        denominator_floor=s,
        operator_slope_bound=k0,
        alpha_inf=alpha_inf,
        mesh_size=h,
        perturbation_bound=bound,
        measured_sup_distance=measured,
        sample_depth=depth,
    )


@dataclass(frozen=True)
class OrderFit:
    """Error decay across dyadic refinements and its fitted slope."""

    levels: tuple[int, ...]
    mesh_sizes: tuple[float, ...]
    errors: tuple[float, ...]
    slope: float
    scaling_exponent: int
    mode: str

    def to_dict(self) -> dict:
        return {
            "levels": list(self.levels),
            "mesh_sizes": list(self.mesh_sizes),
            "errors": list(self.errors),
            "slope": self.slope,
            "scaling_exponent": self.scaling_exponent,
            "mode": self.mode,
        }

    def rows(self):
        """(level, h, error, running slope) rows; slope between level pairs."""
        out = []
        for i, (lvl, h, e) in enumerate(zip(self.levels, self.mesh_sizes, self.errors)):
            if i == 0:
                running = float("nan")
            else:
                running = (np.log(self.errors[i - 1] / e)
                           / np.log(self.mesh_sizes[i - 1] / h))
            out.append((lvl, h, e, running))
        return out


def empirical_order(fn, derivative, interval=(0.0, 1.0), levels=(3, 4, 5, 6, 7),
                    scaling_exponent: int = 3, mode: str = VS_CLASSICAL,
                    max_points=None) -> OrderFit:
    """Fit the error decay order under dyadic mesh refinement.

    Level ``j`` samples the target on ``2**j + 1`` uniform knots with exact
    derivatives, sets ``alpha_n = 0.5 * a_n**k``, ``u_n = v_n = 1``, and
    measures either the distance of the fractal interpolant to the
    classical spline (``fif-vs-classical``, which decays like ``h**k``) or
    to the target itself (``target-vs-fif``).  The slope is the least
    squares fit of ``log error`` against ``log h``.
    """
    levels = tuple(int(j) for j in levels)
    if len(levels) < 4:
        raise ValueError("need at least 4 mesh levels for a stable order fit")
    if mode not in (VS_CLASSICAL, VS_TARGET):
        raise ValueError(f"unknown comparison mode {mode!r}")
    lo, hi = float(interval[0]), float(interval[1])
    mesh_sizes, errors = [], []
    for j in levels:
        n_knots = 2**j + 1
        x = np.linspace(lo, hi, n_knots)
        data = HermiteData(x, fn(x), derivative(x))
        part = build_partition(data)
        alpha = 0.5 * part.map_slopes**scaling_exponent
        params = IFSParameters(alpha, np.ones(n_knots - 1), np.ones(n_knots - 1))
        samples = sample_fif(data, params, max_points=max_points)
        if mode == VS_CLASSICAL:
            ref = classical_eval(data, params.shape_u, params.shape_v, samples.abscissae)
        else:
            ref = fn(samples.abscissae)
        mesh_sizes.append(float(np.max(part.interval_widths)))
        errors.append(float(np.max(np.abs(samples.ordinates - ref))))
    # floor keeps the fit finite on linear-precision targets with zero error
    slope = float(np.polyfit(np.log(mesh_sizes), np.log(np.maximum(errors, 1e-300)), 1)[0])
    return OrderFit(
        levels=levels,
        mesh_sizes=tuple(mesh_sizes),
        errors=tuple(errors),
        slope=slope,
        scaling_exponent=scaling_exponent,
        mode=mode,
    )
