"""Problem documents: the JSON envelope shared by the CLI and the HTTP service."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .data import HermiteData
from .errors import MalformedDataError
from .ifs import IFSParameters


@dataclass(frozen=True)
class ProblemDocument:
    """Parsed problem: data, optional parameters, optional shape mode, options.

    ``data.derivatives`` left null in the document triggers arithmetic-mean
    estimation; ``params`` left out means zero scalings with ``u=1, v=0``,
    the classical spline.
    """

    data: HermiteData
    params: IFSParameters
    mode: str | None = None
    options: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, doc: dict) -> "ProblemDocument":
        if not isinstance(doc, dict):
            raise MalformedDataError("problem document must be a JSON object")
        if "data" not in doc:
            raise MalformedDataError("problem document missing field 'data'")
        data = HermiteData.from_dict(doc["data"]).with_estimated_derivatives()
        params = IFSParameters.from_dict(doc.get("params") or {}, data.n_intervals)
        mode = doc.get("mode")
        if mode is not None and mode not in ("monotone", "convex"):
            raise MalformedDataError(f"unknown shape mode {mode!r}")
        options = doc.get("options") or {}
        if not isinstance(options, dict):
            raise MalformedDataError("options must be a JSON object")
        return cls(data=data, params=params, mode=mode, options=options)

    @classmethod
    def from_json(cls, text: str | bytes) -> "ProblemDocument":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedDataError(f"invalid JSON: {exc}") from None
        return cls.from_dict(doc)


def evaluate_problem(problem: ProblemDocument, deriv: int = 0, depth=None,
                     method: str = "recursion", grid=None, iterations=None,
                     max_points=None):
    """Dispatch a problem to the right sampler.

    Shared by the CLI and the HTTP service so both produce identical
    samples (and therefore byte-identical serialized output) for identical
    inputs.
    """
    from .evaluate import (
        picard_evaluate,
        sample_derivative_fif,
        sample_fif,
        sample_second_derivative_fif,
    )

    if deriv not in (0, 1, 2):
        raise MalformedDataError(f"derivative order must be 0, 1 or 2, got {deriv!r}")
    if method == "picard":
        if deriv != 0:
            raise MalformedDataError("the Picard evaluator only produces order-0 samples")
        return picard_evaluate(problem.data, problem.params,
                               grid=512 if grid is None else grid,
                               iterations=iterations)
    if method != "recursion":
        raise MalformedDataError(f"unknown evaluation method {method!r}")
    sampler = {0: sample_fif, 1: sample_derivative_fif, 2: sample_second_derivative_fif}[deriv]
    return sampler(problem.data, problem.params, depth=depth, max_points=max_points)
