import numpy as np
import pytest

from fractalspline import HermiteData, IFSParameters

# Reference data sets used throughout: a monotone set and a strictly convex
# set, both with derivative parameters from the arithmetic mean method.

MONOTONE_KNOTS = np.array([0.0, 0.5, 2.2, 3.3])
MONOTONE_VALUES = np.array([124.0, 331.0, 379.0, 835.0])
MONOTONE_DERIVS = np.array(
    [501.67379679144385, 326.3262032085561, 262.78074866310162, 566.3101604278075])

CONVEX_KNOTS = np.array([0.0, 0.5, 0.75, 1.0])
CONVEX_VALUES = np.array([0.0, 8.7713, 18.8599, 32.4673])
CONVEX_DERIVS = np.array(
    [2.3347333333333333, 32.750466666666666, 47.392, 61.4672])

# Published parameter table for the monotone figure family: (alpha, u, v).
MONOTONE_TABLE = {
    "a": ([0.08, 0.06, 0.15], [0.1, 0.1, 0.1], [0.09, 15.0, 0.15]),
    "b": ([0.01, 0.06, 0.15], [0.1, 0.1, 0.1], [0.09, 15.0, 0.15]),
    "c": ([0.08, 0.01, 0.15], [0.1, 0.1, 0.1], [0.09, 15.0, 0.15]),
    "d": ([0.08, 0.06, 0.01], [0.1, 0.1, 0.1], [0.09, 15.0, 0.15]),
    "e": ([0.08, 0.06, 0.15], [0.1, 0.1, 0.1], [10.0, 15.0, 0.15]),
    "f": ([0.0, 0.0, 0.0], [0.1, 0.1, 0.1], [0.09, 15.0, 0.15]),
}

# Published parameter table for the convex figure family.
CONVEX_TABLE = {
    "a": ([-0.24, 0.05, 0.04], [0.1, 0.1, 0.1], [0.2, 0.15, 0.14]),
    "b": ([0.24, 0.05, 0.04], [0.1, 0.1, 0.1], [0.2, 0.15, 0.14]),
    "c": ([0.0, 0.0, 0.0], [0.1, 0.1, 0.1], [0.2, 0.15, 0.14]),
    "d": ([0.24, 0.05, 0.04], [0.2, 0.3, 0.4], [0.3, 0.2, 0.3]),
    "e": ([0.1, 0.05, 0.04], [0.2, 0.3, 0.4], [0.3, 0.2, 0.3]),
    "f": ([-0.01, -0.01, -0.01], [2.0, 2.0, 2.0], [3.0, 3.0, 3.0]),
}


@pytest.fixture
def monotone_data():
    return HermiteData(MONOTONE_KNOTS, MONOTONE_VALUES).with_estimated_derivatives()


@pytest.fixture
def convex_data():
    return HermiteData(CONVEX_KNOTS, CONVEX_VALUES).with_estimated_derivatives()


@pytest.fixture
def table_params_a():
    alpha, u, v = MONOTONE_TABLE["a"]
    return IFSParameters(alpha, u, v)


def params_from_table(table, row, smoothness_order=1):
    alpha, u, v = table[row]
    return IFSParameters(alpha, u, v, smoothness_order=smoothness_order)


def random_admissible(rng, n_knots=None, allow_negative_alpha=True,
                      alpha_frac=0.8, v_lo=0.0, v_hi=10.0, u_lo=0.1, u_hi=5.0):
    """Random data and parameters inside the smoothness-admissible region."""
    if n_knots is None:
        n_knots = int(rng.integers(4, 9))
    knots = np.sort(rng.uniform(0.0, 1.0, n_knots))
    while np.min(np.diff(knots)) < 1e-3:
        knots = np.sort(rng.uniform(0.0, 1.0, n_knots))
    values = rng.uniform(-1.0, 1.0, n_knots)
    derivs = rng.uniform(-3.0, 3.0, n_knots)
    data = HermiteData(knots, values, derivs)
    a = np.diff(knots) / (knots[-1] - knots[0])
    lo = -alpha_frac if allow_negative_alpha else 0.0
    alpha = rng.uniform(lo, alpha_frac, n_knots - 1) * a
    u = rng.uniform(u_lo, u_hi, n_knots - 1)
    v = rng.uniform(v_lo, v_hi, n_knots - 1)
    return data, IFSParameters(alpha, u, v)


def random_params_for(data, rng, allow_negative_alpha=True, alpha_frac=0.8,
                      v_lo=0.0, v_hi=10.0, u_lo=0.1, u_hi=5.0):
    """Random admissible parameters for a given data set's partition."""
    knots = data.knots
    a = np.diff(knots) / (knots[-1] - knots[0])
    lo = -alpha_frac if allow_negative_alpha else 0.0
    alpha = rng.uniform(lo, alpha_frac, knots.size - 1) * a
    u = rng.uniform(u_lo, u_hi, knots.size - 1)
    v = rng.uniform(v_lo, v_hi, knots.size - 1)
    return IFSParameters(alpha, u, v)


def random_monotone_instance(rng, n_knots=None):
    """Strictly increasing data with nonnegative derivative parameters."""
    if n_knots is None:
        n_knots = int(rng.integers(4, 7))
    knots = np.cumsum(rng.uniform(0.2, 1.0, n_knots))
    gaps = rng.uniform(0.1, 2.0, n_knots - 1)
    values = np.concatenate([[0.0], np.cumsum(gaps)])
    slopes = gaps / np.diff(knots)
    derivs = np.empty(n_knots)
    derivs[0] = slopes[0] * rng.uniform(0.2, 1.5)
    derivs[-1] = slopes[-1] * rng.uniform(0.2, 1.5)
    derivs[1:-1] = np.minimum(slopes[:-1], slopes[1:]) * rng.uniform(0.2, 1.5, n_knots - 2)
    return HermiteData(knots, values, derivs)


def random_convex_instance(rng, n_knots=None):
    """Strictly convex data: derivatives weave strictly through the slopes."""
    if n_knots is None:
        n_knots = int(rng.integers(4, 7))
    knots = np.cumsum(rng.uniform(0.2, 1.0, n_knots))
    h = np.diff(knots)
    slopes = np.cumsum(rng.uniform(0.3, 1.5, n_knots - 1)) - 1.0
    values = np.concatenate([[0.0], np.cumsum(slopes * h)])
    derivs = np.empty(n_knots)
    derivs[0] = slopes[0] - rng.uniform(0.05, 0.5)
    derivs[-1] = slopes[-1] + rng.uniform(0.05, 0.5)
    t = rng.uniform(0.2, 0.8, n_knots - 2)
    derivs[1:-1] = slopes[:-1] + t * (slopes[1:] - slopes[:-1])
    return HermiteData(knots, values, derivs)
