"""Sufficient-condition parameter regions for monotone and convex interpolation.

For each mode the admissible region is a per-interval box: scaling factors
in ``[0, alpha_max_n]`` and tension parameters above a floor ``v_min_n``
that depends on the chosen scaling.  The conditions are sufficient but not
necessary, so curves outside the region may still be shaped; the discrete
verifier reports what actually happened on sampled curves.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import as_interval_vector
from .data import HermiteData, build_partition
from .errors import InsufficientDataError, MalformedDataError, NecessaryConditionError
from .evaluate import CurveSamples
from .ifs import IFSParameters

#: Additive slack keeping the strict tension inequality strict in floats.
V_MIN_SLACK_REL = 1e-9

MONOTONE = "monotone"
CONVEX = "convex"


@dataclass(frozen=True)
class ShapeViolation:
    abscissa: float
    quantity: str
    value: float

    def to_dict(self) -> dict:
        return {"abscissa": self.abscissa, "quantity": self.quantity, "value": self.value}


@dataclass(frozen=True)
class ShapeReport:
    """Outcome of a discrete shape check; ``verified`` iff no violations."""

    verified: bool
    violations: tuple[ShapeViolation, ...]
    tolerance: float
    mode: str

    def to_dict(self) -> dict:
        return {
            "verified": self.verified,
            "mode": self.mode,
            "tolerance": self.tolerance,
            "violations": [v.to_dict() for v in self.violations],
        }


class ShapeBounds:
    """Per-interval admissible scaling caps and tension floors for one mode.

    ``alpha_max`` caps the scaling factor per interval (exclusive for the
    convex mode, inclusive-capable for the monotone mode except that the
    strict contraction bound ``alpha_n < a_n`` always applies on top).
    ``v_min_for`` gives the tension floor for a concrete scaling choice;
    it scales linearly with the reference shape parameter ``u``.

    Degenerate intervals (zero slope gap in monotone mode; a collapsed
    derivative/slope chain link in convex mode) force ``alpha_n = 0`` and,
    for the data to be representable at all, force derivative equalities;
    ``degenerate_feasible`` records whether the data honors those.
    """

    def __init__(self, mode, data: HermiteData, u):
        if mode not in (MONOTONE, CONVEX):
            raise ValueError(f"unknown shape mode {mode!r}")
        part = build_partition(data)
        self.mode = mode
        self.data = data
        self.partition = part
        self.shape_u = as_interval_vector(u, "u", part.n_intervals)
        self._derive()

    # -- construction internals -------------------------------------------

    def _derive(self):
        part = self.partition
        data = self.data
        d = data.require_derivatives()
        y = data.values
        h, a, delta = part.interval_widths, part.map_slopes, part.slopes
        width = part.total_width
        span = y[-1] - y[0]
        dl, dr = d[:-1], d[1:]

        if self.mode == MONOTONE:
            terms = [a.copy()]
            if d[0] > 0:
                terms.append(h * dl / (d[0] * width))
            if d[-1] > 0:
                terms.append(h * dr / (d[-1] * width))
            if span > 0:
                terms.append(h * delta / span)
            alpha_max = np.min(np.stack(terms), axis=0)
            degenerate = delta == 0.0
            alpha_max[degenerate] = 0.0
            feasible = ~degenerate | ((dl == 0.0) & (dr == 0.0))
            self.alpha_max_exclusive = False
        else:
            den_lo = span - d[0] * width      # > 0 for strictly convex data
            den_hi = d[-1] * width - span
            terms = [a * a]
            if den_lo > 0:
                terms.append(h * (delta - dl) / den_lo)
            if den_hi > 0:
                terms.append(h * (dr - delta) / den_hi)
            alpha_max = np.min(np.stack(terms), axis=0)
            degenerate = (delta - dl == 0.0) | (dr - delta == 0.0)
            alpha_max[degenerate] = 0.0
            feasible = ~degenerate | ((dl == delta) & (dr == delta))
            self.alpha_max_exclusive = True

        self.alpha_max = alpha_max
        self.degenerate = degenerate
        self.degenerate_feasible = feasible

    # -- queries -----------------------------------------------------------

    @property
    def n_intervals(self) -> int:
        return self.partition.n_intervals

    def _starred(self, alpha):
        part, data = self.partition, self.data
        d = data.require_derivatives()
        y = data.values
        h, a = part.interval_widths, part.map_slopes
        ds_l = d[:-1] - alpha * d[0] / a
        ds_r = d[1:] - alpha * d[-1] / a
        delta_s = part.slopes - alpha * (y[-1] - y[0]) / h
        return ds_l, ds_r, delta_s

    def v_min_for(self, alpha, u=None) -> np.ndarray:
        """Tension floors at the given scalings (inf marks infeasibility).

        Monotone mode: the largest of the three starred derivative/slope
        ratios.  Convex mode: the larger of the two starred gap ratios.  A
        nonpositive denominator means no tension value can certify the
        shape at that scaling.
        """
        alpha = as_interval_vector(alpha, "alpha", self.n_intervals)
        u = self.shape_u if u is None else as_interval_vector(u, "u", self.n_intervals)
        ds_l, ds_r, delta_s = self._starred(alpha)
        out = np.empty(self.n_intervals)
        if self.mode == MONOTONE:
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.max(np.stack([ds_l, ds_r, ds_l + ds_r]), axis=0) / delta_s
            out = np.where(delta_s > 0, np.maximum(u * ratio, 0.0), np.inf)
        else:
            gap_lo = delta_s - ds_l
            gap_hi = ds_r - delta_s
            with np.errstate(divide="ignore", invalid="ignore"):
                ratio = np.maximum(gap_hi / gap_lo, gap_lo / gap_hi)
            out = np.where((gap_lo > 0) & (gap_hi > 0), u * ratio, np.inf)
        deg = self.degenerate
        out[deg & self.degenerate_feasible] = 0.0
        out[deg & ~self.degenerate_feasible] = np.inf
        return out

    def admissible(self, params: IFSParameters) -> tuple[bool, list[str]]:
        """Check a parameter set against the sufficient conditions."""
        alpha = as_interval_vector(params.scalings, "alpha", self.n_intervals)
        u = as_interval_vector(params.shape_u, "u", self.n_intervals)
        v = as_interval_vector(params.shape_v, "v", self.n_intervals)
        v_min = self.v_min_for(alpha, u)
        a = self.partition.map_slopes
        reasons = []
        for n in range(self.n_intervals):
            tag = f"interval {n + 1}"
            if self.degenerate[n]:
                if alpha[n] != 0.0:
                    reasons.append(f"{tag}: degenerate interval requires alpha = 0")
                continue
            if alpha[n] < 0.0:
                reasons.append(f"{tag}: alpha must be nonnegative")
            if self.alpha_max_exclusive:
                if not alpha[n] < self.alpha_max[n]:
                    reasons.append(f"{tag}: alpha {alpha[n]:.6g} not below cap {self.alpha_max[n]:.6g}")
            else:
                if not alpha[n] <= self.alpha_max[n]:
                    reasons.append(f"{tag}: alpha {alpha[n]:.6g} above cap {self.alpha_max[n]:.6g}")
                if not alpha[n] < a[n]:
                    reasons.append(f"{tag}: alpha must stay below the contraction bound {a[n]:.6g}")
            if not (u[n] > 0 and v[n] > 0):
                reasons.append(f"{tag}: shape parameters must be positive")
            if not v[n] >= v_min[n]:
                reasons.append(f"{tag}: v {v[n]:.6g} below tension floor {v_min[n]:.6g}")
        return (not reasons), reasons

    def to_dict(self, alpha=None) -> dict:
        """JSON view; tension floors evaluated at ``alpha`` (default zero)."""
        if alpha is None:
            alpha = np.zeros(self.n_intervals)
        v_min = self.v_min_for(alpha)
        return {
            "mode": self.mode,
            "alpha_max": self.alpha_max.tolist(),
            "alpha_max_exclusive": self.alpha_max_exclusive,
            "v_min": [None if not np.isfinite(x) else float(x) for x in v_min],
            "v_min_alpha": np.asarray(alpha, dtype=float).tolist(),
            "degenerate": self.degenerate.tolist(),
            "degenerate_feasible": self.degenerate_feasible.tolist(),
            "shape_u": self.shape_u.tolist(),
        }


def monotone_bounds(data: HermiteData, u=1.0) -> ShapeBounds:
    """Admissible region for monotone interpolation.

    Requires nondecreasing values and nonnegative derivatives (necessary
    conditions); raises naming the first offending index otherwise.  The
    scaling cap per interval is the smallest of the contraction ratio and
    the three derivative/slope ratios; flat intervals force a zero scaling
    and zero derivatives.
    """
    y = data.values
    d = data.require_derivatives()
    drop = np.flatnonzero(np.diff(y) < 0)
    if drop.size:
        i = int(drop[0])
        raise NecessaryConditionError(
            f"values must be nondecreasing for monotone interpolation; "
            f"values[{i}]={y[i]:.6g} > values[{i + 1}]={y[i + 1]:.6g}", index=i)
    neg = np.flatnonzero(d < 0)
    if neg.size:
        i = int(neg[0])
        raise NecessaryConditionError(
            f"derivatives must be nonnegative for monotone interpolation; "
            f"derivatives[{i}]={d[i]:.6g}", index=i)
    return ShapeBounds(MONOTONE, data, u)


def convex_bounds(data: HermiteData, u=1.0) -> ShapeBounds:
    """Admissible region for convex interpolation.

    The derivative parameters must weave strictly through the slopes,
    ``d_1 < delta_1 < d_2 < ... < d_N``; a reversed link raises naming its
    interval, while an equality marks the interval degenerate (straight
    segment, zero scaling, equal derivatives).
    """
    part = build_partition(data)
    d = data.require_derivatives()
    delta = part.slopes
    for n in range(part.n_intervals):
        if d[n] > delta[n]:
            raise NecessaryConditionError(
                f"convexity chain broken on interval {n + 1}: "
                f"d[{n}]={d[n]:.6g} > slope {delta[n]:.6g}", index=n)
        if delta[n] > d[n + 1]:
            raise NecessaryConditionError(
                f"convexity chain broken on interval {n + 1}: "
                f"slope {delta[n]:.6g} > d[{n + 1}]={d[n + 1]:.6g}", index=n)
    return ShapeBounds(CONVEX, data, u)


def auto_select(data: HermiteData, mode: str, margin: float = 0.9,
                u=1.0) -> IFSParameters:
    """Pick parameters strictly inside the sufficient region.

    Scalings are backed off to ``margin * alpha_max``; tension parameters
    sit ``(1 + margin)`` times above the floor evaluated at those scalings,
    plus a tiny slack so strict inequalities survive floating point.
    """
    if not 0.0 < margin < 1.0:
        raise ValueError(f"margin must lie in (0, 1), got {margin!r}")
    bounds = (monotone_bounds if mode == MONOTONE else convex_bounds)(data, u)
    infeasible = np.flatnonzero(bounds.degenerate & ~bounds.degenerate_feasible)
    if infeasible.size:
        n = int(infeasible[0])
        raise NecessaryConditionError(
            f"interval {n + 1} is degenerate but the derivatives do not take "
            f"the forced values required for a {mode} interpolant", index=n)
    alpha = margin * bounds.alpha_max
    v_min = bounds.v_min_for(alpha)
    if not np.all(np.isfinite(v_min)):
        n = int(np.flatnonzero(~np.isfinite(v_min))[0])
        raise NecessaryConditionError(
            f"interval {n + 1} has no finite tension floor at the selected scaling",
            index=n)
    u_vec = bounds.shape_u
    v = v_min * (1.0 + margin) + V_MIN_SLACK_REL * u_vec
    params = IFSParameters(alpha, u_vec, v,
                           smoothness_order=2 if mode == CONVEX else 1)
    ok, reasons = bounds.admissible(params)
    if not ok:
        raise NecessaryConditionError(
            "auto-selected parameters failed re-validation: " + "; ".join(reasons))
    return params


def verify_shape(samples: CurveSamples, mode: str, tolerance: float = 1e-9) -> ShapeReport:
    """Discrete shape check on sorted order-0 samples.

    Monotone mode flags consecutive ordinate drops below ``-tolerance``
    times the ordinate scale.  Convex mode flags points that rise above the
    chord of their neighbors: the divided second difference weighted by the
    neighbor gaps.  The weighting keeps the test in ordinate units, where
    roundoff stays at machine epsilon even for near-coincident sample
    pairs; raw slope differences would amplify it past any tolerance.
    """
    if mode not in (MONOTONE, CONVEX):
        raise ValueError(f"unknown shape mode {mode!r}")
    x, y = samples.abscissae, samples.ordinates
    if x.size < 3:
        raise InsufficientDataError("need at least 3 samples to verify shape")
    if np.any(np.diff(x) <= 0):
        raise MalformedDataError("shape verification needs strictly increasing abscissae")
    violations = []
    scale = max(1.0, float(np.max(np.abs(y))))
    if mode == MONOTONE:
        drops = np.diff(y)
        for i in np.flatnonzero(drops < -tolerance * scale):
            violations.append(ShapeViolation(float(x[i + 1]), "ordinate_drop", float(drops[i])))
    else:
        chord = y[:-2] + (y[2:] - y[:-2]) * (x[1:-1] - x[:-2]) / (x[2:] - x[:-2])
        excess = y[1:-1] - chord
        for i in np.flatnonzero(excess > tolerance * scale):
            violations.append(ShapeViolation(float(x[i + 1]), "chord_excess", float(excess[i])))
    return ShapeReport(
        verified=not violations,
        violations=tuple(violations),
        tolerance=tolerance,
        mode=mode,
    )
