"""Input validation helpers used by the data model and the estimator."""

import numpy as np

from .errors import MalformedDataError, MalformedParametersError


def as_float_vector(values, name, min_len=None):
    """Coerce to a 1-D float64 array, rejecting NaN/inf and bad shapes."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise MalformedDataError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise MalformedDataError(f"{name}[{bad}] is not finite")
    if min_len is not None and arr.size < min_len:
        raise MalformedDataError(f"{name} needs at least {min_len} entries, got {arr.size}")
    return arr


def require_same_length(name_a, a, name_b, b, exc=MalformedDataError):
    if len(a) != len(b):
        raise exc(f"{name_a} has length {len(a)} but {name_b} has length {len(b)}")


def require_strictly_increasing(knots, rel_gap=1e-12):
    """Reject non-increasing or near-duplicate knots.

    Gaps below ``rel_gap`` times the total span would make the contraction
    ratios of the interval maps underflow the scaling-factor bounds.
    """
    width = knots[-1] - knots[0]
    gaps = np.diff(knots)
    bad = np.flatnonzero(gaps <= 0)
    if bad.size:
        i = int(bad[0])
        raise MalformedDataError(
            f"knots must be strictly increasing; knots[{i}]={knots[i]:.6g} >= knots[{i + 1}]={knots[i + 1]:.6g}"
        )
    tiny = np.flatnonzero(gaps <= rel_gap * width)
    if tiny.size:
        i = int(tiny[0])
        raise MalformedDataError(
            f"knot gap at index {i} is below {rel_gap:g} of the total span; knots nearly duplicate"
        )


def as_interval_vector(values, name, n_intervals):
    """Coerce a per-interval parameter vector (scalar broadcasts)."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0:
        arr = np.full(n_intervals, float(arr))
    if arr.ndim != 1:
        raise MalformedParametersError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size != n_intervals:
        raise MalformedParametersError(
            f"{name} must have one entry per interval ({n_intervals}), got {arr.size}"
        )
    if not np.all(np.isfinite(arr)):
        bad = int(np.flatnonzero(~np.isfinite(arr))[0])
        raise MalformedParametersError(f"{name}[{bad}] is not finite")
    return arr


def freeze(arr):
    """Return a read-only view; shared state stays immutable across threads."""
    out = np.asarray(arr, dtype=float)
    out.setflags(write=False)
    return out
