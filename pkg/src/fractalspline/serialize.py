"""Deterministic serialization: JSON/CSV with round-trip exact numbers, SVG plots.

All floating point numbers are written with 17 significant digits so the
binary value round-trips exactly, and the CLI and HTTP surfaces share these
writers so identical inputs produce byte-identical output.
"""

from __future__ import annotations

import math

import numpy as np

from .evaluate import CurveSamples


def format_float(x: float) -> str:
    """17-significant-digit decimal form; round-trips IEEE doubles exactly."""
    if not math.isfinite(x):
        return "null"
    return format(x, ".17g")


def to_json_text(obj) -> str:
    """Compact JSON with deterministic float formatting."""
    pieces = []
    _write_json(obj, pieces)
    return "".join(pieces)


def _write_json(obj, out):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"')
                   .replace("\n", "\\n").replace("\r", "\\r").replace("\t", "\\t") + '"')
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(",")
            _write_json(str(k), out)
            out.append(":")
            _write_json(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _write_json(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__!r}")


def samples_to_csv(samples: CurveSamples) -> str:
    lines = ["abscissa,ordinate"]
    for x, y in zip(samples.abscissae, samples.ordinates):
        lines.append(f"{format_float(float(x))},{format_float(float(y))}")
    return "\n".join(lines) + "\n"


def order_fit_to_csv(fit) -> str:
    lines = ["level,mesh_size,sup_error,running_slope"]
    for level, h, err, running in fit.rows():
        slope = "" if math.isnan(running) else format_float(running)
        lines.append(f"{level},{format_float(h)},{format_float(err)},{slope}")
    return "\n".join(lines) + "\n"


def samples_to_svg(samples: CurveSamples, knots=None, knot_values=None,
                   width: int = 800, height: int = 500) -> str:
    """Polyline rendering with knot markers; viewBox padded 5% around the data."""
    x = np.asarray(samples.abscissae)
    y = np.asarray(samples.ordinates)
    x_lo, x_hi = float(x.min()), float(x.max())
    y_lo, y_hi = float(y.min()), float(y.max())
    x_pad = 0.05 * (x_hi - x_lo or 1.0)
    y_pad = 0.05 * (y_hi - y_lo or 1.0)
    x_lo, x_hi = x_lo - x_pad, x_hi + x_pad
    y_lo, y_hi = y_lo - y_pad, y_hi + y_pad

    def sx(v):
        return (v - x_lo) / (x_hi - x_lo) * width

    def sy(v):
        return height - (v - y_lo) / (y_hi - y_lo) * height

    pts = " ".join(f"{sx(a):.3f},{sy(b):.3f}" for a, b in zip(x, y))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}">',
        f'<polyline fill="none" stroke="#1f6fb2" stroke-width="1.5" points="{pts}"/>',
    ]
    if knots is not None and knot_values is not None:
        for a, b in zip(knots, knot_values):
            parts.append(
                f'<circle cx="{sx(float(a)):.3f}" cy="{sy(float(b)):.3f}" r="4" '
                'fill="#ffffff" stroke="#c23b22" stroke-width="1.5"/>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
