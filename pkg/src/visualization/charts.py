import logging
from pathlib import Path
from typing import Optional, Sequence, Union

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

from ..expr import Expr, as_function, eval_jet, format_expr, parse
from ..models.integral_theorems import IntegralTheoremEngine
from ..numerics.finite_difference import fd_wirtinger
from ..quadrature.area import Disc

logger = logging.getLogger(__name__)

# Plot styling
plt.rcParams['figure.figsize'] = (10, 6)
plt.rcParams['font.size'] = 10
plt.rcParams['axes.titlesize'] = 13
plt.rcParams['axes.labelsize'] = 11


class ConvergenceChartEngine:
    """Convergence sweeps and their figures"""

    def __init__(self, output_dir: Union[str, Path] = "reports", integrals: Optional[IntegralTheoremEngine] = None):
        self.output_dir = Path(output_dir)
        self.integrals = integrals or IntegralTheoremEngine()

    def _save(self, fig, name: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        path = self.output_dir / name
        fig.savefig(path, dpi=150, bbox_inches='tight')
        plt.close(fig)
        logger.info("saved %s", path)
        return path

    # ---------- sweeps ----------
    @staticmethod
    def fd_convergence_frame(f: Union[Expr, str], z: complex, steps: Sequence[float]) -> pd.DataFrame:
        """Jet-versus-central-difference error of both Wirtinger channels per step size"""
        f = parse(f) if isinstance(f, str) else f
        jet = eval_jet(f, z)
        pointwise = as_function(f)
        rows = []
        for h in steps:
            d_z, d_zbar = fd_wirtinger(pointwise, z, h)
            rows.append({"h": h, "error_dz": abs(d_z - jet.d_z), "error_dzbar": abs(d_zbar - jet.d_zbar)})
        frame = pd.DataFrame(rows)
        error = frame["error_dz"] + frame["error_dzbar"]
        frame["order"] = np.log2(error.shift(1) / error)
        return frame

    def pompeiu_convergence_frame(self, w: Union[Expr, str], disc: Disc, zeta: complex,
                                  resolutions: Sequence[int]) -> pd.DataFrame:
        """Reconstruction error of the Pompeiu formula per polar resolution"""
        rows = []
        for n in resolutions:
            result = self.integrals.pompeiu_reconstruct(w, disc.with_resolution((n, n)), zeta)
            rows.append({"resolution": n, "error": result.report.metrics["error"],
                         "area_term": abs(result.area_term)})
        return pd.DataFrame(rows)

    # ---------- figures ----------
    def plot_fd_convergence(self, frame: pd.DataFrame, label: str, name: str = "fd_convergence.png") -> Path:
        fig, ax = plt.subplots()
        ax.loglog(frame["h"], frame["error_dz"], "o-", label="d/dz", color='#2E8B57')
        ax.loglog(frame["h"], frame["error_dzbar"], "s-", label="d/dzbar", color='#4169E1')
        reference = frame["h"] ** 2 * (frame["error_dz"].iloc[0] / frame["h"].iloc[0] ** 2)
        ax.loglog(frame["h"], reference, "--", color='gray', label="O(h^2)")
        ax.set_xlabel("step h")
        ax.set_ylabel("|jet - central difference|")
        ax.set_title(f"Finite-difference oracle for {label}")
        ax.legend()
        ax.grid(True, which="both", alpha=0.3)
        return self._save(fig, name)

    def plot_pompeiu_convergence(self, frame: pd.DataFrame, label: str, name: str = "pompeiu_convergence.png") -> Path:
        fig, ax = plt.subplots()
        floor = np.finfo(float).eps
        ax.semilogy(frame["resolution"], np.maximum(frame["error"], floor), "o-", color='#B22222')
        ax.set_xscale("log", base=2)
        ax.set_xlabel("polar resolution N (N x N nodes)")
        ax.set_ylabel("|reconstruction - w(zeta)|")
        ax.set_title(f"Pompeiu reconstruction of {label}")
        ax.grid(True, which="both", alpha=0.3)
        return self._save(fig, name)

    def plot_liouville_bounds(self, table: pd.DataFrame, label: str, name: str = "liouville_bounds.png") -> Path:
        fig, ax = plt.subplots()
        for radius, rows in table.groupby("radius"):
            line, = ax.semilogy(rows["k"], np.maximum(rows["abs_coefficient"], 1e-300), "o-", label=f"|a_k|, r = {radius:g}")
            ax.semilogy(rows["k"], rows["bound"], "--", color=line.get_color(), label=f"M/r^k, r = {radius:g}")
        ax.set_xlabel("k")
        ax.set_ylabel("magnitude")
        ax.set_title(f"Taylor coefficients of {label} against the Cauchy bound")
        ax.legend(fontsize=8)
        ax.grid(True, alpha=0.3)
        return self._save(fig, name)

    def plot_domain_coloring(self, rgb: np.ndarray, window: Sequence[float], f: Union[Expr, str], name: str) -> Path:
        fig, ax = plt.subplots(figsize=(7, 7))
        x0, y0, x1, y1 = window
        ax.imshow(rgb, extent=(x0, x1, y0, y1), origin="upper", interpolation="nearest")
        ax.set_xlabel("Re z")
        ax.set_ylabel("Im z")
        ax.set_title(f if isinstance(f, str) else format_expr(f))
        return self._save(fig, name)
