"""
Structural Liouville: recovery of Phi = e^K w, the modulus law
|w| = |Phi| e^(-Re K), the maximum-modulus scan and the coefficient bounds
behind the Liouville proof.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from ..config import Settings, get_settings
from ..expr import format_expr
from ..quadrature.area import Disc
from ..quadrature.base import Region
from ..quadrature.contour import Circle, values_on_nodes
from ..quadrature.summation import compensated_sum
from .inputs import ExprLike, PointsLike, as_expr, as_points, channel, describe_points, joint_jets, spread
from .integral_theorems import IntegralTheoremEngine, transformed_expr
from .reports import CheckReport, TransformKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PhiRecovery:
    phi_hat: complex
    deviation: float
    report: CheckReport


@dataclass(frozen=True)
class ModulusScan:
    argmax: complex
    max_value: float
    on_boundary: bool
    constant: bool
    report: CheckReport


class LiouvilleAnalysisEngine:
    """Constancy of the integrating-factor product and its consequences for |w|"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.integrals = IntegralTheoremEngine(self.settings)

    def _tolerance(self, tolerance: Optional[float]) -> float:
        return self.settings.jet_tolerance if tolerance is None else float(tolerance)

    def _product(self, w, K, grid: PointsLike):
        z = as_points(grid)
        (jw, jk), invalid, n_skipped = joint_jets([w, K], z)
        value = channel(jw, "value", z.shape)
        k = channel(jk, "value", z.shape)
        with np.errstate(all="ignore"):
            product = np.exp(k) * value
        invalid = invalid | ~np.isfinite(product)
        return z, value, k, product, invalid, int(np.count_nonzero(invalid))

    def recover_phi(self, w: ExprLike, K: ExprLike, grid: PointsLike,
                    tolerance: Optional[float] = None) -> PhiRecovery:
        """
        phi_hat is the mean of e^K w over the grid; deviation is its maximum
        distance from that mean. A structurally holomorphic bounded w makes
        the product constant.
        """
        w, K = as_expr(w), as_expr(K)
        z, _, _, product, invalid, n_skipped = self._product(w, K, grid)
        valid = product[~invalid]
        if valid.size:
            phi_hat = compensated_sum(valid) / valid.size
            deviation = float(np.max(np.abs(valid - phi_hat)))
        else:
            phi_hat, deviation = complex("nan"), float("nan")
        metrics = {"phi_hat": phi_hat, "deviation": deviation}
        inputs = {"w": format_expr(w), "K": format_expr(K), "grid": describe_points(grid)}
        report = CheckReport.from_headline("recover_phi", inputs, metrics, "deviation", self._tolerance(tolerance),
                                           z.size, n_skipped)
        logger.info("recover_phi: phi_hat=%r deviation=%.3g pass=%s", phi_hat, deviation, report.passed)
        return PhiRecovery(phi_hat, deviation, report)

    def modulus_law_check(self, w: ExprLike, K: ExprLike, grid: PointsLike,
                          tolerance: Optional[float] = None) -> CheckReport:
        """
        max | |w| - |phi_hat| e^(-k1) | with k1 = Re K. The bound |w| <= |phi_hat|
        only follows where k1 >= 0, so the sign of k1 is reported as a census.
        """
        w, K = as_expr(w), as_expr(K)
        tolerance = self._tolerance(tolerance)
        recovery = self.recover_phi(w, K, grid, tolerance)
        z, value, k, _, invalid, n_skipped = self._product(w, K, grid)
        valid = ~invalid
        modulus = np.abs(value[valid])
        k1 = k[valid].real
        predicted = abs(recovery.phi_hat) * np.exp(-k1)
        law = np.abs(modulus - predicted)
        bound = abs(recovery.phi_hat) * (1.0 + tolerance) + tolerance
        exceeds = modulus > bound
        nonnegative = k1 >= 0
        metrics = {
            "max_deviation": float(law.max()) if law.size else float("nan"),
            "phi_hat": recovery.phi_hat,
            "recovery_deviation": recovery.deviation,
            "n_k1_nonnegative": int(np.count_nonzero(nonnegative)),
            "n_k1_negative": int(np.count_nonzero(~nonnegative)),
            "bound_violations_k1_nonnegative": int(np.count_nonzero(exceeds & nonnegative)),
            "bound_violations_k1_negative": int(np.count_nonzero(exceeds & ~nonnegative)),
        }
        inputs = {"w": format_expr(w), "K": format_expr(K), "grid": describe_points(grid)}
        report = CheckReport.from_headline("modulus_law", inputs, metrics, "max_deviation", tolerance,
                                           z.size, n_skipped)
        logger.info("modulus_law: max_deviation=%.3g pass=%s", metrics["max_deviation"], report.passed)
        return report

    def max_modulus_scan(self, w: ExprLike, region: Disc, tolerance: Optional[float] = None) -> ModulusScan:
        """
        Maximum of |w| over the closed-disc lattice, the first maximizer in
        scan order, and whether it lies within one cell of the boundary.
        Passes when no interior sample beats the boundary ring.
        """
        w = as_expr(w)
        if not isinstance(region, Disc):
            raise TypeError("max_modulus_scan samples a disc")
        tolerance = self._tolerance(tolerance)
        z = region.lattice()
        (jw,), invalid, n_skipped = joint_jets([w], z)
        value = channel(jw, "value", z.shape)
        modulus = np.where(invalid, -np.inf, np.abs(value))
        index = int(np.argmax(modulus))
        argmax, max_value = complex(z[index]), float(modulus[index])

        radial = np.abs(z - region.center)
        cell = region.cell_size()
        rim = (radial >= region.radius - cell * (1 + 1e-9)) & ~invalid
        boundary_max = float(modulus[rim].max()) if rim.any() else float("nan")
        is_constant = spread(value[~invalid]) <= tolerance * max(1.0, max_value)
        on_boundary = bool(is_constant or abs(argmax - region.center) >= region.radius - cell * (1 + 1e-9))
        excess = max(0.0, max_value - boundary_max) / max(1.0, max_value)
        metrics = {
            "argmax": argmax,
            "max_value": max_value,
            "boundary_max": boundary_max,
            "interior_excess": excess,
            "on_boundary": int(on_boundary),
            "constant": int(is_constant),
        }
        inputs = {"w": format_expr(w), "region": region.describe()}
        report = CheckReport.from_headline("max_modulus", inputs, metrics, "interior_excess", tolerance,
                                           z.size, n_skipped)
        logger.info("max_modulus: |w| = %.6g at %r (on_boundary=%s, constant=%s)", max_value, argmax,
                    on_boundary, is_constant)
        return ModulusScan(argmax, max_value, on_boundary, bool(is_constant), report)

    def liouville_bound_table(self, w: ExprLike, radii: Sequence[float], k_max: int,
                              n: Optional[int] = None) -> pd.DataFrame:
        """
        One row per (radius, k): |a_k| against M_r / r^k, where M_r is the
        maximum of |w| on the circle of radius r.
        """
        w = as_expr(w)
        rows = []
        for radius in radii:
            coefficients = self.integrals.taylor_coefficients(w, radius, k_max, n)
            dense, _ = Circle(0j, radius).sample(4 * (n or self.settings.circle_nodes))
            M = float(np.max(np.abs(values_on_nodes(w, dense))))
            for k, a_k in enumerate(coefficients):
                bound = M / radius ** k
                rows.append({
                    "radius": float(radius),
                    "k": k,
                    "abs_coefficient": abs(a_k),
                    "M": M,
                    "bound": bound,
                    "holds": bool(abs(a_k) <= bound * (1 + 1e-9) + 1e-12),
                })
        return pd.DataFrame(rows, columns=["radius", "k", "abs_coefficient", "M", "bound", "holds"])

    def structural_liouville(self, w: ExprLike, K: ExprLike, grid: Region, probe_count: int = 25,
                             probe_radius: float = 0.05, tolerance: Optional[float] = None) -> CheckReport:
        """
        Morera scan of e^K w on the grid region, then Phi recovery and the
        modulus law, combined into one report.
        """
        w, K = as_expr(w), as_expr(K)
        tolerance = self._tolerance(tolerance)
        entire = self.integrals.morera_classify(transformed_expr(w, K, TransformKind.MUL_EXP_K), grid,
                                                probe_count, probe_radius)
        if not entire.passed:
            logger.warning("liouville: e^K w is not numerically holomorphic on %s", grid.describe())
        recovery = self.recover_phi(w, K, grid, tolerance)
        law = self.modulus_law_check(w, K, grid, tolerance)
        metrics = {
            "transformed_holomorphic": int(entire.passed),
            "morera_max_abs_integral": entire.metrics["max_abs_integral"],
            "phi_hat": recovery.phi_hat,
            "deviation": recovery.deviation,
            "law_max_deviation": law.metrics["max_deviation"],
        }
        for key in ("n_k1_nonnegative", "n_k1_negative", "bound_violations_k1_nonnegative",
                    "bound_violations_k1_negative"):
            metrics[key] = law.metrics[key]
        headline = max(recovery.deviation, law.metrics["max_deviation"])
        metrics["max_deviation"] = headline if math.isfinite(headline) else float("nan")
        inputs = {"w": format_expr(w), "K": format_expr(K), "grid": grid.describe()}
        return CheckReport.from_headline("liouville", inputs, metrics, "max_deviation", tolerance,
                                         recovery.report.n_points, recovery.report.n_skipped)
