"""
Command-line front end.

Every subcommand writes one JSON report to stdout; diagnostics go to stderr.

Exit codes:
    0: the check passed, or the command is a pure computation
    1: the check failed (including numerical failures during evaluation)
    2: usage, expression or geometry error
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, Optional

import numpy as np

from ..config import Settings, get_settings
from ..errors import (DomainError, EvaluationError, ExcessiveSkipsError, ExpressionError,
                      InvalidGeometryError, UsageError, WorkbenchError)
from ..expr import GRAMMAR, contains_conj, format_expr, parse
from ..models import (CheckReport, IntegralTheoremEngine, LiouvilleAnalysisEngine, StructuralAnalysisEngine,
                      StructuralVariant, TransformKind)
from ..quadrature.area import Disc, parse_region
from ..quadrature.contour import parse_contour, winding_number_detail
from ..visualization.domain_coloring import domain_coloring_rgb, save_image

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _ArgumentParser(argparse.ArgumentParser):
    """Raise instead of exiting so run() owns the exit status"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _complex(text: str) -> complex:
    """"x,y" or a complex literal such as 0.3+0.1i"""
    try:
        if "," in text:
            re_part, im_part = text.split(",")
            return complex(float(re_part), float(im_part))
        return complex(text.strip().replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _floats(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _ints(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive, got 0")
    return value


def _transform(text: str) -> TransformKind:
    try:
        return TransformKind(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"transform must be one of none, K, expK; got {text!r}")


def _variant(text: str) -> StructuralVariant:
    try:
        return StructuralVariant(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"variant must be paper or strong; got {text!r}")


# ---------- commands ----------

def _grid(args):
    return parse_region(args.grid, args.res)


def _holomorphy_annotation(report: CheckReport, engine: IntegralTheoremEngine, w, center: complex,
                           radius: float) -> CheckReport:
    """Morera scan of the disc a Cauchy-formula command relies on"""
    try:
        probe = engine.morera_classify(w, Disc(center, radius), probe_count=16, probe_radius=0.1 * radius)
    except WorkbenchError as e:
        logger.warning("holomorphy precondition not checked: %s", e)
        return report
    if not probe.passed:
        logger.warning("%s is not numerically holomorphic on the disc; the Cauchy formula does not apply",
                       format_expr(w))
    return report.annotate(holomorphic_precondition=int(probe.passed),
                           precondition_max_abs_integral=probe.metrics["max_abs_integral"])


def cmd_residual(args, s: Settings) -> CheckReport:
    return StructuralAnalysisEngine(s).structural_residual(parse(args.w), parse(args.K), _grid(args),
                                                           args.variant)


def cmd_cbv(args, s: Settings) -> CheckReport:
    return StructuralAnalysisEngine(s).cbv_residual(parse(args.w), parse(args.A), parse(args.B), parse(args.phi),
                                                    _grid(args))


def cmd_cr(args, s: Settings) -> CheckReport:
    return StructuralAnalysisEngine(s).cauchy_riemann_check(parse(args.w), _grid(args))


def cmd_system(args, s: Settings) -> CheckReport:
    return StructuralAnalysisEngine(s).structural_system_check(parse(args.w), parse(args.K), _grid(args))


def cmd_constancy(args, s: Settings) -> CheckReport:
    return StructuralAnalysisEngine(s).constancy_conditions(parse(args.w), _grid(args))


def cmd_solve(args, s: Settings) -> CheckReport:
    phi, K = parse(args.phi), parse(args.K)
    solution = StructuralAnalysisEngine.build_structural_solution(phi, K)
    inputs = {"phi": format_expr(phi), "K": format_expr(K), "solution": format_expr(solution)}
    return CheckReport.computation("solve", inputs, {"phi_conj_free": int(not contains_conj(phi))})


def cmd_green(args, s: Settings) -> CheckReport:
    region = parse_region(args.region, args.res)
    g = None if args.g is None else parse(args.g)
    return IntegralTheoremEngine(s).green_identity_check(parse(args.f), region, args.n, g)


def cmd_cauchy_theorem(args, s: Settings) -> CheckReport:
    return IntegralTheoremEngine(s).generalized_cauchy_check(parse(args.w), parse(args.K), parse_contour(args.contour),
                                                             args.transform, args.n)


def cmd_formula(args, s: Settings) -> CheckReport:
    return IntegralTheoremEngine(s).generalized_cauchy_formula_check(parse(args.w), parse(args.K), args.center,
                                                                     args.radius, args.z, args.transform, args.n)


def cmd_cauchy_eval(args, s: Settings) -> CheckReport:
    engine = IntegralTheoremEngine(s)
    w = parse(args.w)
    value = engine.cauchy_eval(w, args.center, args.radius, args.z, args.k, args.n)
    inputs = {"w": format_expr(w), "center": args.center, "radius": args.radius, "z": args.z, "k": args.k}
    report = CheckReport.computation("cauchy_eval", inputs, {"value": value})
    return _holomorphy_annotation(report, engine, w, args.center, args.radius)


def cmd_taylor(args, s: Settings) -> CheckReport:
    engine = IntegralTheoremEngine(s)
    w = parse(args.w)
    coefficients = engine.taylor_coefficients(w, args.radius, args.kmax, args.n, args.center)
    inputs = {"w": format_expr(w), "center": args.center, "radius": args.radius, "k_max": args.kmax}
    report = CheckReport.computation("taylor", inputs, {f"a_{k}": a for k, a in enumerate(coefficients)})
    return _holomorphy_annotation(report, engine, w, args.center, args.radius)


def cmd_estimate(args, s: Settings) -> CheckReport:
    engine = IntegralTheoremEngine(s)
    w = parse(args.w)
    report = engine.cauchy_estimate_check(w, args.a, args.R, args.nmax, args.n)
    return _holomorphy_annotation(report, engine, w, args.a, args.R)


def cmd_pompeiu(args, s: Settings) -> CheckReport:
    region = parse_region(args.region, args.res)
    return IntegralTheoremEngine(s).pompeiu_reconstruct(parse(args.w), region, args.zeta, args.n).report


def cmd_morera(args, s: Settings) -> CheckReport:
    region = parse_region(args.region, args.res)
    return IntegralTheoremEngine(s).morera_classify(parse(args.w), region, args.probes, args.probe_radius,
                                                    args.n)


def cmd_liouville(args, s: Settings) -> CheckReport:
    return LiouvilleAnalysisEngine(s).structural_liouville(parse(args.w), parse(args.K), _grid(args), args.probes,
                                                           args.probe_radius)


def cmd_maxmod(args, s: Settings) -> CheckReport:
    region = parse_region(args.region, args.res)
    if not isinstance(region, Disc):
        raise InvalidGeometryError("maxmod scans a disc region")
    return LiouvilleAnalysisEngine(s).max_modulus_scan(parse(args.w), region).report


def cmd_winding(args, s: Settings) -> CheckReport:
    contour = parse_contour(args.contour)
    number, residual = winding_number_detail(contour, args.z, args.n)
    inputs = {"contour": contour.describe(), "z": args.z}
    return CheckReport.computation("winding", inputs, {"winding_number": number, "residual": residual})


def cmd_render(args, s: Settings) -> CheckReport:
    f = parse(args.f)
    if len(args.window) != 4 or len(args.pixels) != 2:
        raise UsageError("--window takes x0,y0,x1,y1 and --pixels takes W,H")
    rgb, invalid = domain_coloring_rgb(f, args.window, args.pixels)
    if args.out is not None:
        save_image(rgb, args.out)
    inputs = {"f": format_expr(f), "window": list(args.window), "pixels": list(args.pixels), "out": args.out}
    return CheckReport.computation("render", inputs, {"black_pixels": int(np.count_nonzero(invalid))},
                                   n_points=int(invalid.size), n_skipped=int(np.count_nonzero(invalid)))


# ---------- parser ----------

def _add_grid(p, default: str = "rect:-1,-1,1,1", res: str = "32"):
    p.add_argument("--grid", default=default, help=f"sample region, disc:cx,cy,r or rect:x0,y0,x1,y1 (default {default})")
    p.add_argument("--res", default=res, help=f"lattice resolution N or N,M (default {res})")


def _add_tol(p):
    p.add_argument("--tol", type=float, default=None, help="tolerance (default from settings)")


def _add_n(p, what: str = "contour nodes"):
    p.add_argument("--n", type=_positive_int, default=None, help=f"{what} (default from settings)")


COMMANDS: Dict[str, Callable] = {
    "residual": cmd_residual,
    "cbv": cmd_cbv,
    "cr": cmd_cr,
    "system": cmd_system,
    "constancy": cmd_constancy,
    "solve": cmd_solve,
    "green": cmd_green,
    "cauchy-theorem": cmd_cauchy_theorem,
    "formula": cmd_formula,
    "cauchy-eval": cmd_cauchy_eval,
    "taylor": cmd_taylor,
    "estimate": cmd_estimate,
    "pompeiu": cmd_pompeiu,
    "morera": cmd_morera,
    "liouville": cmd_liouville,
    "maxmod": cmd_maxmod,
    "winding": cmd_winding,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="workbench",
        description="Structural holomorphic workbench: Wirtinger-calculus checks with JSON reports",
        epilog="Expression grammar:\n" + GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--verbose", "-v", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_ArgumentParser)

    p = sub.add_parser("residual", help="structural condition residual on a grid")
    p.add_argument("--w", required=True)
    p.add_argument("--K", required=True)
    p.add_argument("--variant", type=_variant, default=StructuralVariant.PAPER_FORM, help="paper or strong (default paper)")
    _add_grid(p)
    _add_tol(p)

    p = sub.add_parser("cbv", help="residual of dw/dzbar + A w + B conj(w) - phi")
    p.add_argument("--w", required=True)
    p.add_argument("--A", default="0")
    p.add_argument("--B", default="0")
    p.add_argument("--phi", default="0")
    _add_grid(p)
    _add_tol(p)

    p = sub.add_parser("cr", help="real Cauchy-Riemann system residual")
    p.add_argument("--w", required=True)
    _add_grid(p)
    _add_tol(p)

    p = sub.add_parser("system", help="both structural derivatives Dw/dzbar and Dw/dz")
    p.add_argument("--w", required=True)
    p.add_argument("--K", required=True)
    _add_grid(p)
    _add_tol(p)

    p = sub.add_parser("constancy", help="sufficient conditions for constancy of an analytic w")
    p.add_argument("--w", required=True)
    _add_grid(p)
    _add_tol(p)

    p = sub.add_parser("solve", help="build w = phi exp(-K)")
    p.add_argument("--phi", default="1")
    p.add_argument("--K", required=True)

    p = sub.add_parser("green", help="complex Green identity on a region")
    p.add_argument("--f", required=True)
    p.add_argument("--g", default=None, help="coefficient of dzbar (default none)")
    p.add_argument("--region", default="disc:0,0,1")
    p.add_argument("--res", default=None, help="area resolution N or N,M")
    _add_n(p)
    _add_tol(p)

    p = sub.add_parser("cauchy-theorem", help="closed integral of w, K w or e^K w")
    p.add_argument("--w", required=True)
    p.add_argument("--K", default="1")
    p.add_argument("--contour", default="circle:0,0,1")
    p.add_argument("--transform", type=_transform, default=TransformKind.NONE, help="none, K or expK (default none)")
    _add_n(p)
    _add_tol(p)

    p = sub.add_parser("formula", help="Cauchy integral formula under each transform")
    p.add_argument("--w", required=True)
    p.add_argument("--K", default="1")
    p.add_argument("--center", type=_complex, default=0j)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--z", type=_complex, default=0j)
    p.add_argument("--transform", type=_transform, default=TransformKind.NONE)
    _add_n(p)
    _add_tol(p)

    p = sub.add_parser("cauchy-eval", help="k-th derivative by Cauchy's differentiation formula")
    p.add_argument("--w", required=True)
    p.add_argument("--center", type=_complex, default=0j)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--z", type=_complex, default=0j)
    p.add_argument("--k", type=_non_negative_int, default=0)
    _add_n(p)

    p = sub.add_parser("taylor", help="Taylor coefficients by contour quadrature")
    p.add_argument("--w", required=True)
    p.add_argument("--center", type=_complex, default=0j)
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--kmax", type=_non_negative_int, default=8)
    _add_n(p)

    p = sub.add_parser("estimate", help="Cauchy's estimate for derivatives 0..nmax")
    p.add_argument("--w", required=True)
    p.add_argument("--a", type=_complex, default=0j)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--nmax", type=_non_negative_int, default=5)
    _add_n(p)
    _add_tol(p)

    p = sub.add_parser("pompeiu", help="Cauchy-Pompeiu reconstruction at zeta")
    p.add_argument("--w", required=True)
    p.add_argument("--region", default="disc:0,0,1")
    p.add_argument("--zeta", type=_complex, default=0j)
    p.add_argument("--res", default=None, help="polar resolution N or N,M")
    _add_n(p)
    _add_tol(p)

    p = sub.add_parser("morera", help="probe-circle holomorphy classification")
    p.add_argument("--w", required=True)
    p.add_argument("--region", default="disc:0,0,1")
    p.add_argument("--res", default=None)
    p.add_argument("--probes", type=_positive_int, default=25)
    p.add_argument("--probe-radius", type=float, default=0.05)
    _add_n(p, "nodes per probe circle")
    _add_tol(p)

    p = sub.add_parser("liouville", help="Morera scan of e^K w, Phi recovery and the modulus law")
    p.add_argument("--w", required=True)
    p.add_argument("--K", required=True)
    p.add_argument("--probes", type=_positive_int, default=25)
    p.add_argument("--probe-radius", type=float, default=0.05)
    _add_grid(p)
    _add_tol(p)

    p = sub.add_parser("maxmod", help="maximum of |w| over a closed disc")
    p.add_argument("--w", required=True)
    p.add_argument("--region", default="disc:0,0,1")
    p.add_argument("--res", default="64")
    _add_tol(p)

    p = sub.add_parser("winding", help="winding number of a contour about a point")
    p.add_argument("--contour", required=True)
    p.add_argument("--z", type=_complex, default=0j)
    _add_n(p)

    p = sub.add_parser("render", help="domain-coloring image (binary PPM)")
    p.add_argument("--f", required=True)
    p.add_argument("--window", type=_floats, default=[-2.0, -2.0, 2.0, 2.0], help="x0,y0,x1,y1 (default -2,-2,2,2)")
    p.add_argument("--pixels", type=_ints, default=[256, 256], help="W,H (default 256,256)")
    p.add_argument("--out", default=None, help="output path, .ppm or .png (default: no file)")
    return parser


def _setup_logging(settings: Settings, verbose: bool) -> None:
    level = logging.INFO if verbose else getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s", force=True)


TOLERANCE_SETTING = {
    "residual": "jet_tolerance",
    "cbv": "jet_tolerance",
    "cr": "jet_tolerance",
    "system": "jet_tolerance",
    "constancy": "jet_tolerance",
    "liouville": "jet_tolerance",
    "maxmod": "jet_tolerance",
    "green": "green_tolerance",
    "cauchy-theorem": "quadrature_tolerance",
    "formula": "quadrature_tolerance",
    "morera": "quadrature_tolerance",
    "pompeiu": "pompeiu_tolerance",
    "estimate": "estimate_tolerance",
}


def _command_settings(args, settings: Settings) -> Settings:
    """Apply --tol to the settings field the command's engine reads"""
    field = TOLERANCE_SETTING.get(args.command)
    if field is None:
        return settings
    return settings.with_overrides(**{field: getattr(args, "tol", None)})


def _error_report(command: Optional[str], error: Exception) -> CheckReport:
    """Failed report carrying the error class and message under inputs"""
    inputs = {"error": type(error).__name__, "message": str(error)}
    if getattr(error, "offset", None) is not None:
        inputs["offset"] = error.offset
    n_points = n_skipped = 0
    if isinstance(error, ExcessiveSkipsError):
        n_points, n_skipped = error.n_points, error.n_skipped
    check = "usage" if command is None else command.replace("-", "_")
    return CheckReport(check, inputs, {}, 0.0, False, n_points, n_skipped)


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")
    sys.stdout.flush()


def run(argv: Optional[List[str]] = None, settings: Optional[Settings] = None) -> int:
    """Run one subcommand; returns the exit status"""
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        command = next((a for a in argv if a in COMMANDS), None)
        _emit(_error_report(command, e).to_json())
        print(f"{e}\n\n{parser.format_usage()}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return int(e.code or 0)
    settings = settings or get_settings()
    _setup_logging(settings, args.verbose)
    if args.command is None:
        _emit(_error_report(None, UsageError("no command given")).to_json())
        print(parser.format_help(), file=sys.stderr)
        return EXIT_USAGE

    try:
        report = COMMANDS[args.command](args, _command_settings(args, settings))
    except ExpressionError as e:
        _emit(_error_report(args.command, e).to_json())
        print(f"expression error: {e}\n\nExpression grammar:\n{GRAMMAR}", file=sys.stderr)
        return EXIT_USAGE
    except (InvalidGeometryError, UsageError) as e:
        _emit(_error_report(args.command, e).to_json())
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, EvaluationError, ExcessiveSkipsError, OSError) as e:
        logger.error("%s failed: %s", args.command, e)
        report = _error_report(args.command, e)

    _emit(report.to_json())
    return EXIT_PASS if report.passed else EXIT_FAIL


def main() -> None:
    sys.exit(run(sys.argv[1:]))
