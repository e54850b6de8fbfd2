import cmath
import logging
from typing import Optional

import numpy as np

from ..config import Settings, get_settings
from ..expr import Constant, Expr, Fn, Mul, Neg, contains_conj, format_expr
from ..numerics.jet import real_partials
from .inputs import (ExprLike, PointsLike, abs_stats, as_expr, as_points, channel, describe_points,
                     joint_jets, spread)
from .reports import CheckReport, StructuralVariant

logger = logging.getLogger(__name__)


class StructuralAnalysisEngine:
    """Grid checks of the structural holomorphic condition and its relatives"""

    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()

    def _tolerance(self, tolerance: Optional[float]) -> float:
        return self.settings.jet_tolerance if tolerance is None else float(tolerance)

    def _log(self, report: CheckReport) -> CheckReport:
        logger.info("%s: %s=%r pass=%s (%d points, %d skipped)", report.check, report.headline,
                    report.headline_value, report.passed, report.n_points, report.n_skipped)
        return report

    def structural_residual(self, w: ExprLike, K: ExprLike, points: PointsLike,
                            variant: StructuralVariant = StructuralVariant.PAPER_FORM,
                            tolerance: Optional[float] = None) -> CheckReport:
        """
        Residual of the structural condition on a point set.

        PAPER_FORM: dw/dzbar + w dK/dzbar. STRONG_FORM: d(Kw)/dzbar, computed
        through the jet product rule. The report also carries max |dK/dzbar|,
        which separates K with the same residual behaviour (e^z/z against conj(z)).
        """
        w, K = as_expr(w), as_expr(K)
        z = as_points(points)
        (jw, jk), invalid, n_skipped = joint_jets([w, K], z)
        if variant is StructuralVariant.STRONG_FORM:
            residual = channel(jk * jw, "d_zbar", z.shape)
        else:
            residual = channel(jw, "d_zbar", z.shape) + channel(jw, "value", z.shape) * channel(jk, "d_zbar", z.shape)
        max_abs, mean_abs = abs_stats(residual, invalid)
        dk_max, _ = abs_stats(channel(jk, "d_zbar", z.shape), invalid)
        dw_max, _ = abs_stats(channel(jw, "d_zbar", z.shape), invalid)
        metrics = {
            "max_abs": max_abs,
            "mean_abs": mean_abs,
            "max_abs_dK_dzbar": dk_max,
            "max_abs_dw_dzbar": dw_max,
        }
        inputs = {"w": format_expr(w), "K": format_expr(K), "points": describe_points(points),
                  "variant": variant.value}
        return self._log(CheckReport.from_headline("structural_residual", inputs, metrics, "max_abs",
                                                   self._tolerance(tolerance), z.size, n_skipped))

    def cbv_residual(self, w: ExprLike, A: ExprLike, B: ExprLike, phi: ExprLike, points: PointsLike,
                     tolerance: Optional[float] = None) -> CheckReport:
        """Residual of dw/dzbar + A w + B conj(w) - phi"""
        w, A, B, phi = (as_expr(e) for e in (w, A, B, phi))
        z = as_points(points)
        (jw, ja, jb, jphi), invalid, n_skipped = joint_jets([w, A, B, phi], z)
        value = channel(jw, "value", z.shape)
        residual = (channel(jw, "d_zbar", z.shape) + channel(ja, "value", z.shape) * value
                    + channel(jb, "value", z.shape) * np.conj(value) - channel(jphi, "value", z.shape))
        max_abs, mean_abs = abs_stats(residual, invalid)
        inputs = {"w": format_expr(w), "A": format_expr(A), "B": format_expr(B), "phi": format_expr(phi),
                  "points": describe_points(points)}
        return self._log(CheckReport.from_headline("cbv_residual", inputs, {"max_abs": max_abs, "mean_abs": mean_abs},
                                                   "max_abs", self._tolerance(tolerance), z.size, n_skipped))

    def cauchy_riemann_check(self, w: ExprLike, points: PointsLike,
                             tolerance: Optional[float] = None) -> CheckReport:
        """Real Cauchy-Riemann system (u_x - v_y, u_y + v_x); its norm is 2 |dw/dzbar|"""
        w = as_expr(w)
        z = as_points(points)
        (jw,), invalid, n_skipped = joint_jets([w], z)
        u_x, u_y, v_x, v_y = (np.broadcast_to(p, z.shape) for p in real_partials(jw))
        first, second = u_x - v_y, u_y + v_x
        norm = np.hypot(first, second)
        max_norm, mean_norm = abs_stats(norm, invalid)
        metrics = {
            "max_norm": max_norm,
            "mean_norm": mean_norm,
            "max_abs_ux_minus_vy": abs_stats(first, invalid)[0],
            "max_abs_uy_plus_vx": abs_stats(second, invalid)[0],
        }
        inputs = {"w": format_expr(w), "points": describe_points(points)}
        return self._log(CheckReport.from_headline("cauchy_riemann", inputs, metrics, "max_norm",
                                                   self._tolerance(tolerance), z.size, n_skipped))

    def structural_system_check(self, w: ExprLike, K: ExprLike, points: PointsLike,
                                tolerance: Optional[float] = None) -> CheckReport:
        """
        Both structural derivatives, Dw/dzbar = dw/dzbar + w dK/dzbar and
        Dw/dz = dw/dz + w dK/dz. They vanish together only for w = C e^(-K).
        """
        w, K = as_expr(w), as_expr(K)
        z = as_points(points)
        (jw, jk), invalid, n_skipped = joint_jets([w, K], z)
        value = channel(jw, "value", z.shape)
        d_zbar = channel(jw, "d_zbar", z.shape) + value * channel(jk, "d_zbar", z.shape)
        d_z = channel(jw, "d_z", z.shape) + value * channel(jk, "d_z", z.shape)
        max_zbar, _ = abs_stats(d_zbar, invalid)
        max_z, _ = abs_stats(d_z, invalid)
        metrics = {"max_abs_dzbar": max_zbar, "max_abs_dz": max_z, "max_abs": max(max_zbar, max_z)}
        inputs = {"w": format_expr(w), "K": format_expr(K), "points": describe_points(points)}
        return self._log(CheckReport.from_headline("structural_system", inputs, metrics, "max_abs",
                                                   self._tolerance(tolerance), z.size, n_skipped))

    def constancy_conditions(self, w: ExprLike, points: PointsLike,
                             tolerance: Optional[float] = None) -> CheckReport:
        """
        The four sufficient conditions for an analytic w to be constant:
        w' = 0, |w| constant, conj(w) analytic, Re w or Im w constant.

        Passes unless some condition holds on an analytic w that is not
        constant. w = 0 counts as constant.
        """
        w = as_expr(w)
        z = as_points(points)
        tol = self._tolerance(tolerance)
        (jw,), invalid, n_skipped = joint_jets([w], z)
        valid = ~invalid
        value = channel(jw, "value", z.shape)[valid]
        d_z = channel(jw, "d_z", z.shape)[valid]
        d_zbar = channel(jw, "d_zbar", z.shape)[valid]
        scale = max(1.0, float(np.max(np.abs(value)))) if value.size else 1.0

        analytic = float(np.max(np.abs(d_zbar))) if value.size else 0.0
        conditions = {
            "derivative": float(np.max(np.abs(d_z))) if value.size else 0.0,
            "modulus_spread": spread(np.abs(value)),
            # d conj(w)/dzbar = conj(dw/dz)
            "conj_dzbar": float(np.max(np.abs(np.conj(d_z)))) if value.size else 0.0,
            "real_or_imag_spread": min(spread(value.real), spread(value.imag)),
        }
        holds = {name: metric <= tol * scale for name, metric in conditions.items()}
        w_spread = spread(value)
        is_analytic = analytic <= tol * scale
        is_constant = w_spread <= tol * scale
        violation = 1.0 if (is_analytic and any(holds.values()) and not is_constant) else 0.0

        metrics = {"max_abs_dw_dzbar": analytic, **conditions}
        metrics.update({f"holds_{name}": int(flag) for name, flag in holds.items()})
        metrics.update({"spread": w_spread, "analytic": int(is_analytic), "constant": int(is_constant),
                        "implication_violation": violation})
        inputs = {"w": format_expr(w), "points": describe_points(points)}
        return self._log(CheckReport.from_headline("constancy_conditions", inputs, metrics, "implication_violation",
                                                   tol, z.size, n_skipped))

    @staticmethod
    def build_structural_solution(phi: ExprLike, K: ExprLike) -> Expr:
        """
        w = phi * exp(-K). For conj-free phi the structural residual of w
        against K vanishes identically.
        """
        phi, K = as_expr(phi), as_expr(K)
        if contains_conj(phi):
            logger.warning("phi = %s depends on conj(z); the result is not structurally holomorphic",
                           format_expr(phi))
        if isinstance(K, Constant):
            factor = Constant(cmath.exp(-complex(K.value)))
            if isinstance(phi, Constant):
                return Constant(complex(phi.value) * complex(factor.value))
            return phi if factor.value == 1 else Mul(phi, factor)
        exponential = Fn("exp", Neg(K))
        if isinstance(phi, Constant) and phi.value == 1:
            return exponential
        return Mul(phi, exponential)
