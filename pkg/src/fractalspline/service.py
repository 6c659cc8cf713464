"""Stateless HTTP surface: evaluation, shape bounds, auto-selection, explorer assets.

Every request parses its own problem state and computes independently; no
state is shared between requests, so any request order yields identical
responses.  Responses are serialized with the same writers as the CLI, so
the two paths emit byte-identical payloads for identical inputs.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.staticfiles import StaticFiles

from .data import HermiteData
from .errors import FractalSplineError, MalformedDataError, ResourceLimitError
from .problem import ProblemDocument, evaluate_problem
from .serialize import to_json_text
from .shape import auto_select, convex_bounds, monotone_bounds, verify_shape


def _json_response(payload, status_code: int = 200) -> Response:
    return Response(content=to_json_text(payload), status_code=status_code,
                    media_type="application/json")


def _error_response(exc: Exception) -> Response:
    status = 413 if isinstance(exc, ResourceLimitError) else 400
    payload = {"error": str(exc), "type": type(exc).__name__}
    index = getattr(exc, "index", None)
    if index is not None:
        payload["index"] = index
    return _json_response(payload, status_code=status)


def _parse_body(raw: bytes) -> dict:
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedDataError(f"invalid JSON body: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedDataError("request body must be a JSON object")
    return doc


def default_static_dir() -> Path:
    """Explorer assets: env override, then a dev build, then the bundled page."""
    env = os.environ.get("FRIF_STATIC_DIR")
    if env:
        return Path(env)
    dev = Path.cwd() / "frontend" / "dist"
    if dev.is_dir():
        return dev
    return Path(__file__).parent / "static"


def create_app(static_dir=None) -> FastAPI:
    app = FastAPI(title="fractalspline", docs_url=None, redoc_url=None)

    @app.post("/api/evaluate")
    async def evaluate(request: Request) -> Response:
        raw = await request.body()
        try:
            doc = _parse_body(raw)
            problem = ProblemDocument.from_dict(doc)
            opts = problem.options
            samples = evaluate_problem(
                problem,
                deriv=int(opts.get("deriv", 0)),
                depth=opts.get("depth"),
                method=opts.get("method", "recursion"),
                grid=opts.get("grid"),
                iterations=opts.get("iterations"),
            )
        except (FractalSplineError, ValueError) as exc:
            return _error_response(exc)
        return _json_response(samples.to_dict())

    @app.post("/api/bounds")
    async def bounds(request: Request) -> Response:
        raw = await request.body()
        try:
            doc = _parse_body(raw)
            data, mode = _data_and_mode(doc)
            fn = monotone_bounds if mode == "monotone" else convex_bounds
            result = fn(data, u=doc.get("u", 1.0))
        except (FractalSplineError, ValueError) as exc:
            return _error_response(exc)
        return _json_response(result.to_dict(alpha=doc.get("alpha")))

    @app.post("/api/autoselect")
    async def autoselect(request: Request) -> Response:
        raw = await request.body()
        try:
            doc = _parse_body(raw)
            data, mode = _data_and_mode(doc)
            margin = float(doc.get("margin", 0.9))
            params = auto_select(data, mode, margin=margin, u=doc.get("u", 1.0))
            problem = ProblemDocument(data=data, params=params, mode=mode)
            samples = evaluate_problem(problem, depth=doc.get("depth", 6))
            report = verify_shape(samples, mode)
        except (FractalSplineError, ValueError) as exc:
            return _error_response(exc)
        return _json_response({"params": params.to_dict(), "report": report.to_dict()})

    directory = Path(static_dir) if static_dir is not None else default_static_dir()
    if directory.is_dir():
        app.mount("/", StaticFiles(directory=directory, html=True), name="explorer")
    return app


def _data_and_mode(doc: dict):
    if "data" not in doc:
        raise MalformedDataError("request missing field 'data'")
    data = HermiteData.from_dict(doc["data"]).with_estimated_derivatives()
    mode = doc.get("mode")
    if mode not in ("monotone", "convex"):
        raise MalformedDataError(f"mode must be 'monotone' or 'convex', got {mode!r}")
    return data, mode


def serve(port: int = 8782, host: str = "127.0.0.1", static_dir=None):
    """Run the service until interrupted."""
    import uvicorn

    uvicorn.run(create_app(static_dir=static_dir), host=host, port=port)
