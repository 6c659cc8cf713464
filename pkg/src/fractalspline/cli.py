"""Command-line interface.

Subcommands: ``interpolate`` (sample a problem to CSV/JSON/SVG), ``bounds``
(shape-admissibility regions), ``autoselect`` (pick and verify parameters),
``converge`` (order experiments), and ``serve`` (HTTP service + explorer).

Exit codes: 0 success, 2 validation failure, 3 shape necessary-condition
failure, 4 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .convergence import TARGETS, VS_CLASSICAL, VS_TARGET, empirical_order
from .errors import (
    FractalSplineError,
    NecessaryConditionError,
    ResourceLimitError,
)
from .problem import ProblemDocument, evaluate_problem
from .serialize import order_fit_to_csv, samples_to_csv, samples_to_svg, to_json_text
from .shape import auto_select, convex_bounds, monotone_bounds, verify_shape

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NECESSARY_CONDITION = 3
EXIT_RESOURCE_CAP = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fractalspline",
        description="Shape-preserving rational cubic fractal spline engine",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_int = sub.add_parser("interpolate", help="sample a problem file")
    p_int.add_argument("problem", help="problem JSON file")
    p_int.add_argument("--depth", type=int, default=None, help="recursion depth")
    p_int.add_argument("--deriv", type=int, choices=(0, 1, 2), default=0,
                       help="derivative order to sample")
    p_int.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p_int.add_argument("--method", choices=("recursion", "picard"), default="recursion")
    p_int.add_argument("--grid", type=int, default=None, help="Picard grid size")
    p_int.add_argument("--iters", type=int, default=None, help="Picard iterations")
    p_int.add_argument("--output", "-o", default=None, help="output path (default stdout)")

    p_bounds = sub.add_parser("bounds", help="print shape-preservation bounds")
    p_bounds.add_argument("problem")
    p_bounds.add_argument("--mode", choices=("monotone", "convex"), required=True)
    p_bounds.add_argument("--output", "-o", default=None)

    p_auto = sub.add_parser("autoselect", help="auto-select and verify parameters")
    p_auto.add_argument("problem")
    p_auto.add_argument("--mode", choices=("monotone", "convex"), required=True)
    p_auto.add_argument("--margin", type=float, default=0.9)
    p_auto.add_argument("--depth", type=int, default=6, help="verification sample depth")
    p_auto.add_argument("--output", "-o", default=None)

    p_conv = sub.add_parser("converge", help="run a convergence-order experiment")
    p_conv.add_argument("--target", choices=sorted(TARGETS), required=True)
    p_conv.add_argument("--k", type=int, choices=(2, 3), default=3,
                        help="scaling-rule exponent")
    p_conv.add_argument("--levels", default="3:7",
                        help="dyadic mesh levels, as lo:hi or a comma list")
    p_conv.add_argument("--mode", choices=("classical", "target"), default="classical",
                        help="compare against the classical spline or the target")
    p_conv.add_argument("--output", "-o", default=None)

    p_serve = sub.add_parser("serve", help="run the HTTP service and explorer")
    p_serve.add_argument("--port", type=int, default=8782)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", default=None, help="explorer asset directory")

    return parser


def _emit(text: str, output: str | None):
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _load_problem(path: str) -> ProblemDocument:
    return ProblemDocument.from_json(Path(path).read_text())


def _parse_levels(levels: str):
    if ":" in levels:
        lo, hi = levels.split(":", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(tok) for tok in levels.split(","))


def cmd_interpolate(args) -> int:
    problem = _load_problem(args.problem)
    samples = evaluate_problem(problem, deriv=args.deriv, depth=args.depth,
                               method=args.method, grid=args.grid,
                               iterations=args.iters)
    if args.format == "csv":
        _emit(samples_to_csv(samples), args.output)
    elif args.format == "json":
        _emit(to_json_text(samples.to_dict()), args.output)
    else:
        knots = problem.data.knots
        marks = problem.data.values if args.deriv == 0 else None
        _emit(samples_to_svg(samples, knots=knots if marks is not None else None,
                             knot_values=marks), args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    problem = _load_problem(args.problem)
    fn = monotone_bounds if args.mode == "monotone" else convex_bounds
    bounds = fn(problem.data, u=problem.params.shape_u)
    _emit(to_json_text(bounds.to_dict()) + "\n", args.output)
    return EXIT_OK


def cmd_autoselect(args) -> int:
    problem = _load_problem(args.problem)
    params = auto_select(problem.data, args.mode, margin=args.margin,
                         u=problem.params.shape_u)
    verified_problem = ProblemDocument(data=problem.data, params=params, mode=args.mode)
    samples = evaluate_problem(verified_problem, depth=args.depth)
    report = verify_shape(samples, args.mode)
    _emit(to_json_text({"params": params.to_dict(), "report": report.to_dict()}) + "\n",
          args.output)
    return EXIT_OK if report.verified else EXIT_VALIDATION


def cmd_converge(args) -> int:
    fn, dfn = TARGETS[args.target]
    mode = VS_CLASSICAL if args.mode == "classical" else VS_TARGET
    fit = empirical_order(fn, dfn, levels=_parse_levels(args.levels),
                          scaling_exponent=args.k, mode=mode)
    _emit(order_fit_to_csv(fit), args.output)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .service import serve

    serve(port=args.port, host=args.host, static_dir=args.static)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "interpolate": cmd_interpolate,
        "bounds": cmd_bounds,
        "autoselect": cmd_autoselect,
        "converge": cmd_converge,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except NecessaryConditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NECESSARY_CONDITION
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_CAP
    except (FractalSplineError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
