"""Shape-preserving rational cubic fractal spline interpolation.

A self-referential interpolation scheme: each subinterval's curve segment
is an affinely scaled copy of the whole curve plus a rational cubic
correction with two free shape parameters per interval.  Zero scaling
factors recover the classical rational cubic spline; small ones add
controlled fractal texture while sufficient per-interval conditions keep
monotone data monotone and convex data convex.
"""

from .convergence import (
    TARGETS,
    VS_CLASSICAL,
    VS_TARGET,
    ErrorBoundReport,
    OrderFit,
    empirical_order,
    perturbation_bound,
)
from .data import HermiteData, Partition, build_partition, estimate_derivatives
from .errors import (
    ContractionViolationError,
    DenominatorPositivityError,
    DivergentBoundError,
    FractalSplineError,
    InsufficientDataError,
    MalformedDataError,
    MalformedParametersError,
    NecessaryConditionError,
    ResourceLimitError,
    SmoothnessOrderError,
)
from .estimator import FractalRationalSpline
from .evaluate import (
    CurveSamples,
    affine_fif_limit,
    classical_eval,
    default_depth,
    evaluate_pointwise,
    hermite_eval,
    picard_evaluate,
    sample_derivative_fif,
    sample_fif,
    sample_second_derivative_fif,
)
from .ifs import (
    IFSParameters,
    RationalPiece,
    ValidationReport,
    build_pieces,
    q_eval,
    tension_decomposition,
    validate_parameters,
)
from .problem import ProblemDocument, evaluate_problem
from .shape import (
    ShapeBounds,
    ShapeReport,
    auto_select,
    convex_bounds,
    monotone_bounds,
    verify_shape,
)

__version__ = "0.1.0"

__all__ = [
    "CurveSamples",
    "ContractionViolationError",
    "DenominatorPositivityError",
    "DivergentBoundError",
    "ErrorBoundReport",
    "FractalRationalSpline",
    "FractalSplineError",
    "HermiteData",
    "IFSParameters",
    "InsufficientDataError",
    "MalformedDataError",
    "MalformedParametersError",
    "NecessaryConditionError",
    "OrderFit",
    "Partition",
    "ProblemDocument",
    "RationalPiece",
    "ResourceLimitError",
    "ShapeBounds",
    "ShapeReport",
    "SmoothnessOrderError",
    "TARGETS",
    "ValidationReport",
    "VS_CLASSICAL",
    "VS_TARGET",
    "affine_fif_limit",
    "auto_select",
    "build_partition",
    "build_pieces",
    "classical_eval",
    "convex_bounds",
    "default_depth",
    "empirical_order",
    "estimate_derivatives",
    "evaluate_pointwise",
    "evaluate_problem",
    "hermite_eval",
    "monotone_bounds",
    "perturbation_bound",
    "picard_evaluate",
    "q_eval",
    "sample_derivative_fif",
    "sample_fif",
    "sample_second_derivative_fif",
    "tension_decomposition",
    "validate_parameters",
    "verify_shape",
]
