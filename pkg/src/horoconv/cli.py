"""
Command line interface for the horoconv package.
"""

import argparse
import sys
import time
from pathlib import Path
from typing import IO, List, Optional, Sequence

import numpy as np

from horoconv.catalog import ENTRIES, default_instances, make_entry, verify_entry
from horoconv.conformal.schouten import eigenvalues_at, normalize_below_half, sigma_k
from horoconv.constants import (
    DEFAULT_WORK_DIR,
    DELAUNAY_PERTURBATIONS,
    INVARIANCE_TOLERANCE,
    LIFT_SAMPLES,
    ODE_TOLERANCE,
    PERIOD_TOLERANCE,
    QUADRIC_TOLERANCE,
    SUBGROUP_PARAMETERS,
)
from horoconv.correspondence.hypersurface import dictionary_tolerance
from horoconv.errors import EigenvalueBoundError, HoroconvError, SpecError
from horoconv.invariance import (
    Generator,
    detect_radial_structure,
    generator_family,
    subgroup_sweep,
    validate_symmetry_dimension,
)
from horoconv.io.mesh import (
    FORMATS,
    SLICE_AXES,
    SLICE_GRID,
    export_mesh,
    slice_mesh,
    slice_points,
    write_curve_csv,
    write_jets_csv,
)
from horoconv.io.report import VerificationReport
from horoconv.io.spec import MetricSpec, parse_metric_spec, parse_samples
from horoconv.logger import LOGGER, debug_logger, deactivate_logger, info_logger
from horoconv.radial import (
    RadialProfile,
    ShootConfig,
    delaunay_search,
    detect_period,
    profile_to_hypersurface,
    round_level,
    shoot,
    shoot_cylindrical,
)

FAILED_CHECKS_EXIT = 3
BRANCHES = ("constant", "delaunay", "flat", "shoot")


def _grid(text: str):
    try:
        rows, cols = (int(part) for part in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ROWSxCOLS, got {text!r}")
    return rows, cols


def _floats(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}")


def _ints(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=3, help="the sphere dimension (Default: 3)")
    common.add_argument(
        "--tol",
        type=float,
        default=None,
        help="the tolerance of the command's checks (Default: per check)",
    )
    common.add_argument("--seed", type=int, default=0, help="the sampling seed (Default: 0)")
    common.add_argument(
        "--samples", type=int, default=None, help="the number of sample points"
    )
    common.add_argument(
        "--sigma-convention",
        choices=("raw", "normalized"),
        default="raw",
        help="sigma_k without or with division by binomial(n, k) (Default: raw)",
    )
    common.add_argument(
        "--dilate",
        action="store_true",
        help="dilate metrics whose eigenvalues reach 1/2 instead of failing",
    )
    common.add_argument(
        "-o",
        "--out",
        type=Path,
        default=DEFAULT_WORK_DIR,
        help="the output directory (Default: horoconv-out)",
    )
    common.add_argument(
        "--timing", action="store_true", help="include wall-clock timing in reports"
    )
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="no logging")
    return common


def _add_spec(parser: argparse.ArgumentParser):
    parser.add_argument(
        "spec",
        help="the metric: round, constant:t=T, <entry>:key=value,..., expr:<formula in "
        "x1..xn and r>, radial-profile:<csv>",
    )
    parser.add_argument(
        "--pole",
        default=None,
        help="the chart pole of expr specifications: north, south, e<j> or coordinates "
        "(Default: north)",
    )


def _add_slice(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--grid",
        type=_grid,
        default=SLICE_GRID,
        help="latitudes x longitudes of the slice grid (Default: 24x48)",
    )
    parser.add_argument(
        "--slice-axes",
        type=_ints,
        default=list(SLICE_AXES),
        help="the three sphere axes spanning the 2-sphere slice (Default: 1,2,3)",
    )
    parser.add_argument(
        "--slice-values",
        type=_floats,
        default=None,
        help="the values of the remaining n-2 sphere coordinates (Default: all 0)",
    )
    parser.add_argument(
        "--format", choices=FORMATS, default="obj", help="the mesh format (Default: obj)"
    )


def parse_args(args: Sequence[str]) -> argparse.Namespace:
    """
    Parse the command line arguments.
    :param Sequence[str] args: The command line arguments.
    :return argparse.Namespace: The parsed arguments.
    """
    common = _common()
    arguments = argparse.ArgumentParser(
        description="Conformal metrics on the sphere and horospherically convex "
        "hypersurfaces of hyperbolic space"
    )
    commands = arguments.add_subparsers(dest="command", required=True)

    verify = commands.add_parser(
        "verify-catalog", parents=[common], help="verify the isoparametric catalog"
    )
    verify.add_argument(
        "--entry",
        default=None,
        help=f"the entry family, one of {', '.join(sorted(ENTRIES))} (Default: all)",
    )
    for name in ("r", "t", "k", "rho0"):
        verify.add_argument(
            f"--{name}",
            type=float,
            default=None,
            help=f"the parameter {name}; with all parameters of --entry given, only "
            "that instance is verified",
        )
    verify.add_argument(
        "--fd", action="store_true", help="differentiate the metrics by finite differences"
    )

    analyze = commands.add_parser(
        "analyze", parents=[common], help="Schouten eigenvalues and their structure"
    )
    _add_spec(analyze)
    analyze.add_argument(
        "--points",
        default=None,
        help="explicit sphere points, coordinates separated by ',' and points by '/'",
    )

    correspond = commands.add_parser(
        "correspond", parents=[common], help="build the hypersurface of a metric"
    )
    _add_spec(correspond)
    _add_slice(correspond)
    correspond.add_argument("--mesh-out", type=Path, default=None, help="the mesh file")
    correspond.add_argument("--jets-out", type=Path, default=None, help="the jets CSV")
    correspond.add_argument("--report-out", type=Path, default=None, help="the report")

    invariance = commands.add_parser(
        "invariance", parents=[common], help="test isometries of a metric"
    )
    _add_spec(invariance)
    invariance.add_argument(
        "--generators",
        nargs="+",
        default=None,
        help="generators rot(i,j) and boost(a) of L^{n+2} (Default: all)",
    )
    invariance.add_argument(
        "--values",
        type=_floats,
        default=list(SUBGROUP_PARAMETERS),
        help="the one-parameter subgroup values (Default: +-1, +-0.3, +-0.05)",
    )

    radial = commands.add_parser(
        "radial", parents=[common], help="solve the radial sigma_k equation"
    )
    radial.add_argument("--k", type=int, required=True, help="the order of sigma_k")
    radial.add_argument(
        "--c", type=float, default=None, help="the level (Default: the round level)"
    )
    radial.add_argument("--branch", choices=BRANCHES, default="constant")
    radial.add_argument(
        "--perturb",
        type=_floats,
        default=list(DELAUNAY_PERTURBATIONS),
        help="Delaunay perturbations (Default: 0.01,0.05,0.1)",
    )
    radial.add_argument(
        "--t", type=float, default=0.0, help="the dilation of the round start (Default: 0)"
    )
    radial.add_argument("--span", type=float, default=None, help="the s-span to integrate")
    radial.add_argument("--u0", type=float, default=0.0, help="u at r0 for --branch shoot")
    radial.add_argument("--du0", type=float, default=0.0, help="u' at r0 for --branch shoot")
    radial.add_argument("--r0", type=float, default=1.0, help="the start radius")
    radial.add_argument("--direction", choices=("outward", "inward"), default="outward")
    radial.add_argument(
        "--lift", action="store_true", help="lift the first profile to a hypersurface"
    )
    radial.add_argument(
        "--angles", type=int, default=48, help="rotation angles of the lifted mesh"
    )

    export = commands.add_parser(
        "export-mesh", parents=[common], help="export the mesh of a 2-sphere slice"
    )
    _add_spec(export)
    _add_slice(export)
    export.add_argument("--mesh-out", type=Path, default=None, help="the mesh file")

    return arguments.parse_args(args)


def _spec(args: argparse.Namespace) -> MetricSpec:
    return parse_metric_spec(args.spec, args.n, args.pole, args.sigma_convention)


def _finish(report: VerificationReport, path: Path, args, start: float) -> int:
    elapsed = time.perf_counter() - start
    LOGGER.info(f"{args.command} took {elapsed:.3f} s")
    if args.timing:
        report.timing = elapsed
    report.write(path)
    LOGGER.info(f"report written to {path}")
    if not report.passed:
        for record in report.failures():
            LOGGER.warning(f"failed: {record}")
        return FAILED_CHECKS_EXIT
    return 0


def _bounded(f, points: np.ndarray, dilate: bool):
    """
    The field itself when its eigenvalues stay below 1/2 on the points, its
    dilation when permitted, an EigenvalueBoundError otherwise.
    """
    top = float(np.max(eigenvalues_at(f, points)))
    if top >= 0.5 - dictionary_tolerance(f):
        if not dilate:
            raise EigenvalueBoundError(
                f"Schouten eigenvalues of {f.name} reach {top:.6g} >= 1/2; use --dilate"
            )
        LOGGER.warning(f"{f.name} has degenerate points (sup lambda = {top:.6g}), dilating")
    if dilate:
        return normalize_below_half(f, points)
    return f, 0.0


def verify_catalog(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    samples = args.samples or 100
    given = {
        name: getattr(args, name)
        for name in ("r", "t", "k", "rho0")
        if getattr(args, name) is not None
    }
    if args.entry is not None and args.entry not in ENTRIES:
        raise SpecError(f"unknown catalog entry {args.entry!r}, expected one of {sorted(ENTRIES)}")
    if args.entry is not None and given and set(ENTRIES[args.entry][1]) <= set(given):
        entries = [make_entry(args.entry, args.n, **given)]
    else:
        entries = [
            e
            for e in default_instances(args.n)
            if args.entry is None or e.name == args.entry
        ]
        if given:
            entries = [e for e in entries if all(e.params.get(k) == v for k, v in given.items())]
    if not entries:
        raise SpecError("no catalog instance matches the filter")
    code = 0
    for index, entry in enumerate(entries):
        report = verify_entry(entry, samples, args.seed, analytic=not args.fd)
        path = args.out / "verify-catalog" / f"{entry.name}-{index:02d}.report"
        print(f"{entry}: {'pass' if report.passed else 'FAIL'} ({path})")
        code = max(code, _finish(report, path, args, start))
    return code


def analyze(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    spec = _spec(args)
    f = spec.build()
    if args.points:
        points = np.array(parse_samples(args.points, args.n))
    else:
        points = spec.sample(f, args.samples or 50, np.random.default_rng(args.seed))
    eigenvalues = eigenvalues_at(f, points)
    tolerance = args.tol or dictionary_tolerance(f)
    normalized = args.sigma_convention == "normalized"
    report = VerificationReport(f.name, {**spec.to_dict(), "seed": args.seed})
    report.add_value("eigenvalue-min", np.min(eigenvalues, axis=0), tolerance)
    report.add_value("eigenvalue-max", np.max(eigenvalues, axis=0), tolerance)
    for k in range(1, args.n + 1):
        values = [sigma_k(row, k, normalized) for row in eigenvalues]
        report.add_value(f"sigma-{k}", [min(values), max(values)], tolerance)
    supremum = float(np.max(eigenvalues))
    _, t = normalize_below_half(f, points)
    report.add_value("sup-lambda", supremum, tolerance)
    report.add_value("below-half", supremum < 0.5 - tolerance, tolerance)
    report.add_value("dilation-needed", t, tolerance)
    if t > 0:
        LOGGER.info(f"eigenvalues reach {supremum:.6g}; dilating by t = {t:.6g} brings them below 1/2")
    structure = detect_radial_structure(f, points)
    report.adjudicate("structure", structure.to_dict())
    print(f"{f.name}: sup lambda = {supremum:.9g}, dilation {t:.6g}, {structure}")
    return _finish(report, args.out / "analyze.report", args, start)


def correspond(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    spec = _spec(args)
    f = spec.build()
    rows, cols = args.grid
    points = slice_points(args.n, rows, cols, args.slice_axes, args.slice_values)
    points = points[f.contains_array(points)]
    f, t = _bounded(f, points, args.dilate)
    mesh = slice_mesh(f, args.grid, args.slice_axes, args.slice_values, tolerance=args.tol)
    tolerance = args.tol or dictionary_tolerance(f)
    report = VerificationReport(f.name, {**spec.to_dict(), "grid": [rows, cols]})
    report.add_check(
        "jet-quadrics",
        max(max(j.residuals().values()) for j in mesh.jets),
        QUADRIC_TOLERANCE,
        len(mesh.jets),
    )
    report.add_check(
        "dictionary", max(j.dictionary_residual for j in mesh.jets), tolerance, len(mesh.jets)
    )
    report.add_check(
        "inside-ball", 1.0 - mesh.max_ball_radius, 0.0, mesh.vertices.shape[0], at_least=True
    )
    report.add_value("dilation", t)
    report.add_value("max-ball-radius", mesh.max_ball_radius, QUADRIC_TOLERANCE)
    report.add_value("vertices", mesh.vertices.shape[0])
    report.add_value("faces", mesh.faces.shape[0])
    mesh_out = args.mesh_out or args.out / f"mesh.{args.format}"
    jets_out = args.jets_out or args.out / "jets.csv"
    mesh.export(mesh_out, args.format)
    write_jets_csv(mesh.jets, jets_out)
    print(f"{f.name}: {mesh} -> {mesh_out}, jets -> {jets_out}")
    return _finish(report, args.report_out or args.out / "correspond.report", args, start)


def invariance(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    spec = _spec(args)
    f = spec.build()
    samples = spec.sample(f, args.samples or 20, np.random.default_rng(args.seed))
    f, t = _bounded(f, samples, args.dilate)
    if args.generators:
        generators = [Generator.parse(text) for text in args.generators]
    else:
        generators = generator_family(args.n)
    tol = args.tol or INVARIANCE_TOLERANCE
    sweep = subgroup_sweep(f, generators, samples, args.values, tol, hypersurface=True)
    report = VerificationReport(f.name, {**spec.to_dict(), "seed": args.seed})
    disagreements = sum(
        row["metric-invariant"] != row["hypersurface-invariant"] for row in sweep.rows
    )
    report.add_check("agreement", disagreements, 0, len(sweep.rows), args.seed)
    report.add_value("dilation", t)
    report.add_value("sweep", sweep.rows, tol)
    for generator in generators:
        report.adjudicate(repr(generator), sweep.invariant(generator))
    dimension = sweep.symmetry_dimension(generators)
    try:
        validate_symmetry_dimension(dimension, eigenvalues_at(f, samples))
        report.adjudicate("symmetry-dimension", dimension)
    except SpecError as error:
        report.adjudicate("symmetry-dimension", f"rejected: {error}")
    print(f"{f.name}: invariant under {dimension} of {len(generators)} generators")
    return _finish(report, args.out / "invariance.report", args, start)


def _profiles(args: argparse.Namespace, config: ShootConfig, c: float):
    convention = args.sigma_convention
    if args.branch == "constant":
        profile = shoot_cylindrical(args.t, 0.0, 0.0, "outward", args.n, args.k, c, config, convention)
        closed = RadialProfile.round(args.n, args.k, profile.s, args.t, convention)
        profile.metadata["closed-form-deviation"] = float(np.max(np.abs(profile.u - closed.u)))
        return [("constant", profile)]
    if args.branch == "flat":
        if args.k == 1:
            profile = shoot_cylindrical(0.0, 1.0, 0.0, "outward", args.n, 1, c, config, convention)
        else:
            LOGGER.info(f"the flat start is singular for k={args.k}; using the closed form")
            grid = np.linspace(0.0, config.max_span, config.points)
            profile = RadialProfile.flat(args.n, args.k, grid, convention)
        return [("flat", profile)]
    if args.branch == "shoot":
        profile = shoot(
            (args.u0, args.du0), args.r0, args.direction, args.n, args.k, c, config, convention
        )
        return [("shoot", profile)]
    results = delaunay_search(args.n, args.k, c, args.perturb, config, convention)
    return [(f"delaunay-{delta:g}", profile) for delta, profile, _ in results]


def radial(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    convention = args.sigma_convention
    if args.branch == "flat":
        c = 0.0 if args.c is None else args.c
    else:
        c = round_level(args.n, args.k, convention, args.t) if args.c is None else args.c
    span = args.span or (4.0 if args.branch == "constant" else 20.0)
    config = ShootConfig(max_span=span, ode_tol=args.tol or ODE_TOLERANCE)
    report = VerificationReport(
        f"radial(n={args.n},k={args.k},{args.branch})",
        {"n": args.n, "k": args.k, "c": c, "convention": convention, "branch": args.branch},
    )
    profiles = _profiles(args, config, c)
    for label, profile in profiles:
        path = profile.write_csv(args.out / f"radial-{label}.csv")
        residual = profile.metadata.get("sigma-residual")
        if residual is None:
            residual = float(np.max(profile.sigma_residual()))
        tolerance = profile.metadata.get("sigma-tolerance", config.ode_tol * max(1.0, abs(c)))
        report.add_check(f"{label}-sigma-residual", residual, tolerance, profile.s.size)
        report.add_value(f"{label}-energy-drift", profile.energy_drift())
        report.add_value(f"{label}-termination", profile.metadata.get("termination", "closed-form"))
        if "closed-form-deviation" in profile.metadata:
            report.add_check(
                f"{label}-closed-form", profile.metadata["closed-form-deviation"], 1e-8, profile.s.size
            )
        period = detect_period(profile, PERIOD_TOLERANCE)
        report.add_value(f"{label}-period", period.to_dict(), PERIOD_TOLERANCE)
        if args.branch == "delaunay" and period.periodic:
            delta = profile.metadata["perturbation"]
            again = shoot_cylindrical(
                -abs(delta), 0.0, 0.0, "outward", args.n, args.k, c, config.halved(), convention
            )
            second = detect_period(again, PERIOD_TOLERANCE)
            change = abs(second.period - period.period) if second.periodic else np.inf
            report.add_check(f"{label}-period-halving", change, 1e-4, profile.s.size)
        print(f"{label}: {profile!r}, {period} -> {path}")
    if args.lift:
        label, profile = profiles[0]
        lift = profile_to_hypersurface(
            profile, args.samples or LIFT_SAMPLES, allow_dilation=args.dilate, angles=args.angles
        )
        report.adjudicate("lift", lift.summary())
        report.add_check("lift-weingarten-constancy", lift.weingarten_spread, 1e-6, len(lift.jets))
        report.add_check("lift-quadrics", lift.max_residual(), QUADRIC_TOLERANCE, len(lift.jets))
        export_mesh(lift.vertices, lift.faces, args.out / "radial-mesh.obj")
        write_curve_csv(lift.curve_rows(), args.out / "radial-curve.csv")
        write_jets_csv(lift.jets, args.out / "radial-jets.csv")
    return _finish(report, args.out / "radial.report", args, start)


def export_mesh_command(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    spec = _spec(args)
    f = spec.build()
    rows, cols = args.grid
    points = slice_points(args.n, rows, cols, args.slice_axes, args.slice_values)
    f, t = _bounded(f, points[f.contains_array(points)], args.dilate)
    mesh = slice_mesh(f, args.grid, args.slice_axes, args.slice_values, tolerance=args.tol)
    path = mesh.export(args.mesh_out or args.out / f"mesh.{args.format}", args.format)
    elapsed = time.perf_counter() - start
    LOGGER.info(f"{args.command} took {elapsed:.3f} s (dilation {t:.6g})")
    print(f"{f.name}: {mesh} -> {path}")
    return 0


COMMANDS = {
    "verify-catalog": verify_catalog,
    "analyze": analyze,
    "correspond": correspond,
    "invariance": invariance,
    "radial": radial,
    "export-mesh": export_mesh_command,
}


def main(
    *args: str, stdout: Optional[IO] = sys.stdout, stderr: Optional[IO] = sys.stderr
) -> int:
    """
    The main entry point of horoconv.
    :param Sequence[str] args: The command line arguments, sys.argv if empty.
    :param IO stdout: The standard output stream.
    :param IO stderr: The standard error stream.
    :return int: The exit code: 0 on success, 2 for invalid input, 3 for domain
    errors and failed checks, 4 for eigenvalue bound violations and 5 for solver
    singularities.
    """
    if stdout is not None:
        sys.stdout = stdout
    if stderr is not None:
        sys.stderr = stderr
    try:
        args = parse_args(args or sys.argv[1:])
    except SystemExit as error:
        return 0 if error.code in (0, None) else SpecError.exit_code
    if args.quiet:
        deactivate_logger()
    elif args.verbose:
        debug_logger()
    else:
        info_logger()
    try:
        return COMMANDS[args.command](args)
    except HoroconvError as error:
        print(f"horoconv {args.command}: {error}", file=sys.stderr)
        return error.exit_code
    except OSError as error:
        print(f"horoconv {args.command}: {error}", file=sys.stderr)
        return SpecError.exit_code


if __name__ == "__main__":
    sys.exit(main())
