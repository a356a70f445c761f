"""Command-line surface: build spaces, compute sizes, and emit CSV profiles.

Spaces are addressed by a descriptor, either inline JSON or a JSON file:

    {"generator": "cantor", "params": {"depth": 10, "length": 1}}
    {"file": "points.csv", "format": "points"}

Exit codes: 0 on success, 2 for input or validation errors, and 3 when a
scalar magnitude query hits a singular scale.  Standard output carries only
machine-readable values (17 significant digits, so doubles round-trip);
progress and warnings go to standard error.  The ``--threads`` flag (default
from METRIC_SPREAD_THREADS) only changes wall-clock time, never output.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import generators
from .dimension import DEFAULT_STEP, dimension_profile
from .magnitude import (
    ENUMERATION_CAP,
    NoWeightingError,
    magnitude,
    magnitude_profile,
    maxdiv_profile,
    maximum_diversity,
)
from .continuum import (
    ManifoldSummary,
    interval_magnitude,
    interval_spread0,
    interval_spread2,
    interval_spread_inf,
    riemannian_asymptotic_spread,
    sphere_spread0,
    surface_asymptotic_spread,
)
from .spaces import (
    DistanceMatrix,
    PointCloud,
    diameter,
    npoints,
    read_distance_matrix_csv,
    read_point_cloud_csv,
    require_valid,
    write_distance_matrix_csv,
    write_point_cloud_csv,
)
from .spread import log_grid, spread_profile, spread_q, write_profile_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3

#: Generator registry: name -> (builder, {param: (type, default-or-None)}).
#: None marks a required parameter.  This is the schema accepted in a
#: descriptor's "params" object.
GENERATORS = {
    "three_point_r": (generators.three_point_r, {}),
    "k32": (generators.k32, {}),
    "linear_tree": (lambda n: generators.linear_tree_metric(n), {"n": (int, None)}),
    "corona": (lambda n: generators.corona_metric(n), {"n": (int, None)}),
    "cycle": (lambda n: generators.cycle_metric(n), {"n": (int, None)}),
    "grid": (generators.grid, {"rows": (int, None), "cols": (int, None), "spacing": (float, 1.0)}),
    "cantor": (generators.cantor, {"depth": (int, None), "length": (float, 1.0)}),
    "koch": (generators.koch, {"depth": (int, None), "width": (float, 1.0)}),
    "sierpinski": (generators.sierpinski, {"depth": (int, None), "width": (float, 1.0)}),
}


def build_space(descriptor: dict):
    """Construct a space from a descriptor dict; raises ValueError on bad input."""
    if not isinstance(descriptor, dict):
        raise ValueError("descriptor must be a JSON object")
    has_generator = "generator" in descriptor
    has_file = "file" in descriptor
    if has_generator == has_file:
        raise ValueError('descriptor needs exactly one of "generator" or "file"')

    if has_file:
        fmt = descriptor.get("format")
        if fmt == "matrix":
            space = read_distance_matrix_csv(descriptor["file"])
        elif fmt == "points":
            space = read_point_cloud_csv(descriptor["file"])
        else:
            raise ValueError(f'file descriptor needs "format": "matrix" or "points", got {fmt!r}')
        require_valid(space)
        return space

    name = descriptor["generator"]
    if name not in GENERATORS:
        known = ", ".join(sorted(GENERATORS))
        raise ValueError(f"unknown generator {name!r}; known generators: {known}")
    builder, schema = GENERATORS[name]
    params = descriptor.get("params", {})
    if not isinstance(params, dict):
        raise ValueError('"params" must be a JSON object')
    unknown = set(params) - set(schema)
    if unknown:
        raise ValueError(f"unknown parameters for {name!r}: {sorted(unknown)}")
    kwargs = {}
    for key, (kind, default) in schema.items():
        if key in params:
            kwargs[key] = kind(params[key])
        elif default is None:
            raise ValueError(f"generator {name!r} requires parameter {key!r}")
        else:
            kwargs[key] = default
    return builder(**kwargs)


def _load_descriptor(args) -> dict:
    if args.space is not None:
        return json.loads(args.space)
    with open(args.space_file, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _parse_order(text: str) -> float:
    q = float(text)
    if math.isnan(q) or q < 0:
        raise ValueError(f"order must be a real in [0, inf], got {text}")
    return q


def _print_scalar(value: float) -> None:
    print(f"{value:.17g}")


def _open_out(path):
    return sys.stdout if path == "-" else open(path, "w", encoding="utf-8", newline="\n")


def _emit_profile(profile, path) -> None:
    if path == "-":
        sys.stdout.write(f"t,{profile.value_column}\n")
        for t, v in zip(profile.grid, profile.values):
            sys.stdout.write(f"{t:.17g},{v:.17g}\n")
    else:
        write_profile_csv(profile, path)


def _grid_from_args(args) -> np.ndarray:
    return log_grid(args.t_min, args.t_max, points_per_decade=args.points_per_decade)


# ---------------------------------------------------------------------------
# Subcommands

def cmd_generate(args) -> int:
    space = build_space(_load_descriptor(args))
    if isinstance(space, PointCloud):
        write_point_cloud_csv(space, args.out)
    elif isinstance(space, DistanceMatrix):
        write_distance_matrix_csv(space, args.out)
    else:
        raise ValueError("descriptor did not produce a writable space")
    return EXIT_OK


def cmd_spread(args) -> int:
    space = build_space(_load_descriptor(args))
    _print_scalar(spread_q(space, args.t, args.q, threads=args.threads).value)
    return EXIT_OK


def cmd_magnitude(args) -> int:
    space = build_space(_load_descriptor(args))
    result = magnitude(space, args.t)
    if result.degraded:
        print(
            f"warning: weighting residual {result.weighting.residual:.3e} at t={args.t}; "
            "scale is near a singular one",
            file=sys.stderr,
        )
    _print_scalar(result.value)
    return EXIT_OK


def cmd_maxdiv(args) -> int:
    space = build_space(_load_descriptor(args))
    _print_scalar(maximum_diversity(space, args.t, cap=args.cap))
    return EXIT_OK


def cmd_profile(args) -> int:
    space = build_space(_load_descriptor(args))
    grid = _grid_from_args(args)
    if args.quantity == "spread":
        profile = spread_profile(space, grid, q=args.q, threads=args.threads)
    elif args.quantity == "magnitude":
        profile, report = magnitude_profile(space, grid, threads=args.threads)
        sidecar = {"singular_scales": report["singular"], "flagged_scales": report["flagged"]}
        if args.out == "-":
            print(json.dumps(sidecar, sort_keys=True), file=sys.stderr)
        else:
            with open(f"{args.out}.singular.json", "w", encoding="utf-8") as fh:
                json.dump(sidecar, fh, sort_keys=True, indent=2)
                fh.write("\n")
    else:
        profile = maxdiv_profile(space, grid, cap=args.cap, threads=args.threads)
    _emit_profile(profile, args.out)
    return EXIT_OK


def cmd_dimension(args) -> int:
    descriptor = _load_descriptor(args)
    space = build_space(descriptor)
    grid = _grid_from_args(args)
    profile = dimension_profile(space, grid, step=args.step, threads=args.threads)
    if args.x_axis == "extent":
        x = grid * diameter(space)
        header = "extent,dimension"
    else:
        x = grid
        header = "t,dimension"
    out = _open_out(args.out)
    try:
        out.write(header + "\n")
        for xv, v in zip(x, profile.values):
            out.write(f"{xv:.17g},{v:.17g}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    meta = {
        "step": args.step,
        "descriptor": descriptor,
        "points": npoints(space),
        "x_axis": args.x_axis,
    }
    if args.out == "-":
        print(json.dumps(meta, sort_keys=True), file=sys.stderr)
    else:
        with open(f"{args.out}.meta.json", "w", encoding="utf-8") as fh:
            json.dump(meta, fh, sort_keys=True, indent=2)
            fh.write("\n")
    return EXIT_OK


_CONTINUUM_SWEEPS = {
    "interval_e0": ("length", lambda args, x: interval_spread0(x)),
    "interval_e2": ("length", lambda args, x: interval_spread2(x)),
    "interval_einf": ("length", lambda args, x: interval_spread_inf(x)),
    "interval_mag": ("length", lambda args, x: interval_magnitude(x)),
    "sphere": ("radius", lambda args, x: sphere_spread0(args.n, x)),
    "asymptotic": (
        "t",
        lambda args, x: riemannian_asymptotic_spread(
            ManifoldSummary(args.n, args.volume, args.tsc), x
        ),
    ),
    "surface": ("t", lambda args, x: surface_asymptotic_spread(args.area, args.chi, x)),
}


def cmd_continuum(args) -> int:
    swept, evaluate = _CONTINUUM_SWEEPS[args.formula]
    if args.formula in ("sphere", "asymptotic") and args.n is None:
        raise ValueError(f"formula {args.formula!r} requires --n")
    if args.formula == "asymptotic" and (args.volume is None or args.tsc is None):
        raise ValueError('formula "asymptotic" requires --volume and --tsc')
    if args.formula == "surface" and (args.area is None or args.chi is None):
        raise ValueError('formula "surface" requires --area and --chi')
    grid = log_grid(args.param_min, args.param_max, points_per_decade=args.points_per_decade)
    out = _open_out(args.out)
    try:
        out.write("param,value\n")
        for x in grid:
            out.write(f"{x:.17g},{evaluate(args, float(x)):.17g}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser

def _add_space_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--space", help="inline descriptor JSON")
    group.add_argument("--space-file", help="path to a descriptor JSON file")


def _add_grid_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t-min", type=float, required=True, help="smallest scale")
    parser.add_argument("--t-max", type=float, required=True, help="largest scale")
    parser.add_argument(
        "--points-per-decade",
        type=float,
        default=None,
        help="grid density (default: 101 points over the whole range)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metric-spread",
        description="Sizes of metric spaces: spread, magnitude, maximum diversity, "
        "and their scale profiles.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=None,
        help="worker thread cap (default: METRIC_SPREAD_THREADS or 1); "
        "never changes output",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a space to a CSV file")
    _add_space_arguments(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("spread", help="order-q spread at one scale")
    _add_space_arguments(p)
    p.add_argument("--t", type=float, default=1.0, help="scale factor (default 1)")
    p.add_argument("--q", type=_parse_order, default=0.0, help="order in [0, inf] (default 0)")
    p.set_defaults(func=cmd_spread)

    p = sub.add_parser("magnitude", help="magnitude at one scale (exit 3 if singular)")
    _add_space_arguments(p)
    p.add_argument("--t", type=float, default=1.0, help="scale factor (default 1)")
    p.set_defaults(func=cmd_magnitude)

    p = sub.add_parser("maxdiv", help="maximum diversity at one scale (exhaustive)")
    _add_space_arguments(p)
    p.add_argument("--t", type=float, default=1.0, help="scale factor (default 1)")
    p.add_argument("--cap", type=int, default=ENUMERATION_CAP,
                   help=f"largest point count to enumerate (default {ENUMERATION_CAP})")
    p.set_defaults(func=cmd_maxdiv)

    p = sub.add_parser("profile", help="spread/magnitude/maxdiv over a log-spaced grid")
    _add_space_arguments(p)
    p.add_argument("--quantity", choices=("spread", "magnitude", "maxdiv"), required=True)
    p.add_argument("--q", type=_parse_order, default=0.0,
                   help="spread order (ignored for magnitude/maxdiv)")
    _add_grid_arguments(p)
    p.add_argument("--cap", type=int, default=ENUMERATION_CAP)
    p.add_argument("--out", default="-", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("dimension", help="spread dimension over a log-spaced grid")
    _add_space_arguments(p)
    _add_grid_arguments(p)
    p.add_argument("--step", type=float, default=DEFAULT_STEP,
                   help=f"relative log-step of the derivative stencil (default {DEFAULT_STEP})")
    p.add_argument("--x-axis", choices=("scale", "extent"), default="scale",
                   help="x column: the scale t, or t times the space diameter")
    p.add_argument("--out", default="-", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("continuum", help="closed-form curves over a parameter grid")
    p.add_argument("--formula", choices=sorted(_CONTINUUM_SWEEPS), required=True)
    p.add_argument("--param-min", type=float, required=True)
    p.add_argument("--param-max", type=float, required=True)
    p.add_argument("--points-per-decade", type=float, default=None)
    p.add_argument("--n", type=int, default=None, help="dimension (sphere, asymptotic)")
    p.add_argument("--volume", type=float, default=None, help="manifold volume (asymptotic)")
    p.add_argument("--tsc", type=float, default=None, help="total scalar curvature (asymptotic)")
    p.add_argument("--area", type=float, default=None, help="surface area (surface)")
    p.add_argument("--chi", type=float, default=None, help="Euler characteristic (surface)")
    p.add_argument("--out", default="-", help="output CSV path (default: stdout)")
    p.set_defaults(func=cmd_continuum)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoWeightingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, TypeError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
