"""
Integral theorems checked by quadrature: Green, Cauchy (classical and
generalized), Cauchy's differentiation formula and estimate, Pompeiu, Morera.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from ..config import Settings, get_settings
from ..errors import DomainError, EvaluationError, InvalidGeometryError, UsageError, WorkbenchError
from ..expr import Expr, Fn, Mul, eval_jet, evaluate_values, format_expr
from ..quadrature.area import Disc, area_integral_estimate, singular_area_integral_estimate
from ..quadrature.base import Contour, Region
from ..quadrature.contour import Circle, values_on_nodes
from ..quadrature.summation import weighted_sum
from .inputs import ExprLike, as_expr
from .reports import CheckReport, TransformKind

logger = logging.getLogger(__name__)


def transformed_expr(w: Expr, K: Expr, transform: TransformKind) -> Expr:
    """w, K w or e^K w"""
    if transform is TransformKind.MUL_K:
        return Mul(K, w)
    if transform is TransformKind.MUL_EXP_K:
        return Mul(Fn("exp", K), w)
    return w


@dataclass(frozen=True)
class PompeiuResult:
    value: complex
    boundary_term: complex
    area_term: complex
    report: CheckReport


class IntegralTheoremEngine:
    """Contour and area quadrature checks of the integral theorems"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def _log(self, report: CheckReport) -> CheckReport:
        logger.info("%s: %s=%r pass=%s", report.check, report.headline, report.headline_value, report.passed)
        return report

    # ---------- Green ----------
    def green_identity_check(self, f: ExprLike, region: Region, n_contour: Optional[int] = None,
                             g: Optional[ExprLike] = None, tolerance: Optional[float] = None) -> CheckReport:
        """
        Complex Green formula: the boundary integral of f dz + g dzbar equals
        2i times the area integral of df/dzbar - dg/dz.
        """
        f = as_expr(f)
        g = None if g is None else as_expr(g)
        tolerance = self.settings.green_tolerance if tolerance is None else float(tolerance)

        nodes, dz = region.boundary().sample(n_contour)
        lhs = weighted_sum(values_on_nodes(f, nodes), dz)
        source = area_integral_estimate(f, region, "d_zbar")
        area = source.value
        n_points, n_skipped = nodes.size + source.n_points, source.n_skipped
        if g is not None:
            lhs += weighted_sum(values_on_nodes(g, nodes), np.conj(dz))
            sink = area_integral_estimate(g, region, "d_z")
            area -= sink.value
            n_points += sink.n_points
            n_skipped += sink.n_skipped
        rhs = 2j * area
        metrics = {"lhs": lhs, "rhs": rhs, "difference": abs(lhs - rhs)}
        inputs = {"f": format_expr(f), "region": region.describe(), "n_contour": nodes.size}
        if g is not None:
            inputs["g"] = format_expr(g)
        return self._log(CheckReport.from_headline("green_identity", inputs, metrics, "difference",
                                                   tolerance, n_points, n_skipped))

    # ---------- Cauchy theorem ----------
    def generalized_cauchy_check(self, w: ExprLike, K: ExprLike, contour: Contour,
                                 transform: TransformKind = TransformKind.NONE, n: Optional[int] = None,
                                 tolerance: Optional[float] = None) -> CheckReport:
        """
        Closed integral of the transformed function under ``transform``. The
        integrals under every transform are reported side by side.
        """
        w, K = as_expr(w), as_expr(K)
        tolerance = self.settings.quadrature_tolerance if tolerance is None else float(tolerance)
        nodes, dz = contour.sample(n)
        integrals: Dict[TransformKind, complex] = {
            kind: weighted_sum(values_on_nodes(transformed_expr(w, K, kind), nodes), dz)
            for kind in TransformKind
        }
        chosen = integrals[transform]
        metrics = {"integral_value": chosen, "abs_integral": abs(chosen)}
        for kind, value in integrals.items():
            metrics[f"integral_{kind.value}"] = value
            metrics[f"abs_integral_{kind.value}"] = abs(value)
        inputs = {"w": format_expr(w), "K": format_expr(K), "contour": contour.describe(),
                  "transform": transform.value, "n": nodes.size}
        return self._log(CheckReport.from_headline("generalized_cauchy", inputs, metrics, "abs_integral",
                                                   tolerance, nodes.size, 0))

    # ---------- Cauchy formula ----------
    @staticmethod
    def _check_order(name: str, value: int) -> None:
        if value < 0:
            raise UsageError(f"{name} must be >= 0, got {value}")

    @staticmethod
    def _check_inside(center: complex, radius: float, z: complex) -> None:
        if radius <= 0 or not math.isfinite(radius):
            raise InvalidGeometryError(f"radius must be positive and finite, got {radius!r}")
        margin = 1e-6 * radius
        if not abs(z - center) < radius - margin:
            raise InvalidGeometryError(
                f"z = {z!r} is not inside the circle |z - {center!r}| = {radius!r} (margin {margin:.3g})"
            )

    @staticmethod
    def _cauchy_sums(values: np.ndarray, nodes: np.ndarray, dz: np.ndarray, z: complex,
                     orders: List[int]) -> List[complex]:
        """k!/(2 pi i) times the integral of w / (zeta - z)^(k+1) d zeta, per order k"""
        offset = nodes - z
        return [math.factorial(k) * weighted_sum(values / offset ** (k + 1), dz) / (2j * np.pi) for k in orders]

    def cauchy_eval(self, w: ExprLike, center: complex, radius: float, z: complex, k: int = 0,
                    n: Optional[int] = None) -> complex:
        """
        k-th derivative of w at z by Cauchy's differentiation formula on the
        circle |zeta - center| = radius; k = 0 is the integral formula.
        w must be holomorphic on the closed disc.
        """
        w = as_expr(w)
        center, z = complex(center), complex(z)
        self._check_order("derivative order k", k)
        self._check_inside(center, radius, z)
        nodes, dz = Circle(center, radius).sample(n)
        return self._cauchy_sums(values_on_nodes(w, nodes), nodes, dz, z, [k])[0]

    def taylor_coefficients(self, w: ExprLike, radius: float, k_max: int, n: Optional[int] = None,
                            center: complex = 0j) -> List[complex]:
        """a_0 ... a_k_max about ``center`` from the circle of the given radius"""
        w = as_expr(w)
        self._check_order("k_max", k_max)
        center = complex(center)
        self._check_inside(center, radius, center)
        nodes, dz = Circle(center, radius).sample(n)
        if k_max >= nodes.size:
            raise InvalidGeometryError(f"k_max = {k_max} needs more than {nodes.size} nodes")
        values = values_on_nodes(w, nodes)
        offset = nodes - center
        return [weighted_sum(values / offset ** (k + 1), dz) / (2j * np.pi) for k in range(k_max + 1)]

    def cauchy_estimate_check(self, w: ExprLike, a: complex, R: float, n_max: int, n: Optional[int] = None,
                              tolerance: Optional[float] = None) -> CheckReport:
        """
        |w^(k)(a)| <= k! M / R^k for k = 0 ... n_max, with M the maximum of |w|
        over a dense sampling of the circle |z - a| = R.
        """
        w = as_expr(w)
        a = complex(a)
        self._check_order("n_max", n_max)
        tolerance = self.settings.estimate_tolerance if tolerance is None else float(tolerance)
        self._check_inside(a, R, a)
        circle = Circle(a, R)
        nodes, dz = circle.sample(n)
        dense, _ = circle.sample(4 * nodes.size)
        M = float(np.max(np.abs(values_on_nodes(w, dense))))

        orders = list(range(n_max + 1))
        derivatives = self._cauchy_sums(values_on_nodes(w, nodes), nodes, dz, a, orders)
        metrics = {"M": M}
        slacks = []
        for k, derivative in zip(orders, derivatives):
            bound = math.factorial(k) * M / R ** k
            slacks.append(bound - abs(derivative))
            metrics[f"abs_derivative_{k}"] = abs(derivative)
            metrics[f"bound_{k}"] = bound
            metrics[f"ratio_{k}"] = abs(derivative) / bound if bound > 0 else float("nan")
        metrics["min_slack"] = min(slacks)
        metrics["max_violation"] = max(0.0, -min(slacks))
        inputs = {"w": format_expr(w), "a": a, "R": float(R), "n_max": n_max, "n": nodes.size}
        return self._log(CheckReport.from_headline("cauchy_estimate", inputs, metrics, "max_violation",
                                                   tolerance, nodes.size + dense.size, 0))

    # ---------- Pompeiu ----------
    def pompeiu_reconstruct(self, w: ExprLike, disc: Disc, zeta: complex, n_contour: Optional[int] = None,
                            tolerance: Optional[float] = None) -> PompeiuResult:
        """
        w(zeta) = (1/2 pi i) boundary integral of w(z)/(z - zeta) dz
                  - (1/pi) area integral of (dw/dzbar)/(z - zeta).
        Holds for smooth, not necessarily holomorphic w.
        """
        w = as_expr(w)
        zeta = complex(zeta)
        if not isinstance(disc, Disc):
            raise InvalidGeometryError("Pompeiu reconstruction is supported on discs only")
        tolerance = self.settings.pompeiu_tolerance if tolerance is None else float(tolerance)

        area = singular_area_integral_estimate(w, disc, zeta, "d_zbar")
        nodes, dz = disc.boundary().sample(n_contour)
        boundary_term = weighted_sum(values_on_nodes(w, nodes) / (nodes - zeta), dz) / (2j * np.pi)
        area_term = -area.value / np.pi
        value = boundary_term + area_term
        try:
            direct = eval_jet(w, zeta).value
        except WorkbenchError as e:
            logger.warning("pompeiu: cannot evaluate %s at zeta directly: %s", format_expr(w), e)
            direct = complex("nan")
        metrics = {
            "value": value,
            "boundary_term": boundary_term,
            "area_term": area_term,
            "direct": direct,
            "error": abs(value - direct),
        }
        inputs = {"w": format_expr(w), "region": disc.describe(), "zeta": zeta, "n_contour": nodes.size}
        report = self._log(CheckReport.from_headline("pompeiu", inputs, metrics, "error", tolerance,
                                                     area.n_points + nodes.size, area.n_skipped))
        return PompeiuResult(value, boundary_term, area_term, report)

    # ---------- Morera ----------
    def morera_classify(self, w: ExprLike, region: Region, probe_count: int = 25, probe_radius: float = 0.05,
                        n: Optional[int] = None, tolerance: Optional[float] = None) -> CheckReport:
        """
        Closed integrals of w over small probe circles tiling the region.
        Numerically holomorphic iff every probe integral is below the
        tolerance scaled by the probe circumference. A probe meeting a pole
        is counted as failed and fails the classification.
        """
        w = as_expr(w)
        if probe_count < 1:
            raise UsageError(f"probe count must be positive, got {probe_count}")
        if probe_radius <= 0:
            raise InvalidGeometryError(f"probe radius must be positive, got {probe_radius!r}")
        tolerance = self.settings.quadrature_tolerance if tolerance is None else float(tolerance)
        scaled = tolerance * 2.0 * np.pi * probe_radius
        n = self.settings.probe_nodes if n is None else n

        centers = region.probe_centers(probe_count, probe_radius)
        if centers.size == 0:
            raise InvalidGeometryError(f"no probe circle of radius {probe_radius!r} fits in {region.describe()}")
        unit_nodes, dz = Circle(0j, probe_radius).sample(n)
        nodes = centers[:, None] + unit_nodes[None, :]
        values, invalid = evaluate_values(w, nodes)

        integrals = np.full(centers.size, np.nan, dtype=np.complex128)
        failed = 0
        for i, center in enumerate(centers):
            if np.any(invalid[i]):
                failed += 1
                logger.warning("morera: probe at %r meets a non-evaluable point of %s", complex(center), format_expr(w))
                continue
            integrals[i] = weighted_sum(values[i], dz)

        magnitudes = np.abs(integrals)
        ok = ~np.isnan(magnitudes)
        worst = int(np.argmax(np.where(ok, magnitudes, -np.inf))) if ok.any() else 0
        max_abs = float(magnitudes[ok].max()) if ok.any() else float("inf")
        if failed:
            max_abs = float("inf")
        metrics = {
            "max_abs_integral": max_abs,
            "mean_abs_integral": float(magnitudes[ok].mean()) if ok.any() else float("nan"),
            "worst_center": complex(centers[worst]),
            "n_probes": int(centers.size),
            "failed_probes": failed,
            "probe_radius": float(probe_radius),
        }
        inputs = {"w": format_expr(w), "region": region.describe(), "probe_count": probe_count,
                  "probe_radius": float(probe_radius), "n": n}
        report = CheckReport.from_headline("morera", inputs, metrics, "max_abs_integral", scaled,
                                           int(centers.size), failed)
        report = report.annotate(holomorphic=int(report.passed))
        logger.info("morera: %s classified %s", format_expr(w),
                    "numerically holomorphic" if report.passed else "not holomorphic")
        return report

    # ---------- generalized integral formula ----------
    def generalized_cauchy_formula_check(self, w: ExprLike, K: ExprLike, center: complex, radius: float,
                                         z: complex, transform: TransformKind = TransformKind.NONE,
                                         n: Optional[int] = None,
                                         tolerance: Optional[float] = None) -> CheckReport:
        """
        Cauchy integral formula applied to the transformed function, against
        direct evaluation, under every transform.
        """
        w, K = as_expr(w), as_expr(K)
        center, z = complex(center), complex(z)
        tolerance = self.settings.quadrature_tolerance if tolerance is None else float(tolerance)
        metrics = {}
        for kind in TransformKind:
            target = transformed_expr(w, K, kind)
            try:
                reconstructed = self.cauchy_eval(target, center, radius, z, 0, n)
                direct = eval_jet(target, z).value
                error = abs(reconstructed - direct)
            except (DomainError, EvaluationError) as e:
                logger.warning("formula: %s under %s: %s", format_expr(w), kind.value, e)
                reconstructed = direct = complex("nan")
                error = float("nan")
            metrics[f"reconstructed_{kind.value}"] = reconstructed
            metrics[f"direct_{kind.value}"] = direct
            metrics[f"error_{kind.value}"] = error
        metrics["error"] = metrics[f"error_{transform.value}"]
        inputs = {"w": format_expr(w), "K": format_expr(K), "center": center, "radius": float(radius),
                  "z": z, "transform": transform.value}
        return self._log(CheckReport.from_headline("generalized_cauchy_formula", inputs, metrics, "error",
                                                   tolerance, self.settings.circle_nodes if n is None else n, 0))
