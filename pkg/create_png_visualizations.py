"""
Figures for the workbench: domain colorings of the corpus functions and the
convergence charts of the numerical oracles. Output goes to reports/figures/.
"""

import logging

from src.models import LiouvilleAnalysisEngine
from src.quadrature import Disc
from src.visualization import ConvergenceChartEngine, domain_coloring_rgb, save_image

OUTPUT_DIR = "reports/figures"

DOMAIN_COLORINGS = {
    "identity": ("z", (-2.0, -2.0, 2.0, 2.0)),
    "structural_solution": ("exp(-conj(z))", (-2.0, -2.0, 2.0, 2.0)),
    "reciprocal_sine": ("1/sin(z)", (-4.0, -2.0, 4.0, 2.0)),
    "pole_bearing_factor": ("exp(z)/z", (-2.0, -2.0, 2.0, 2.0)),
    "perturbed_solution": ("z*exp(-conj(z))", (-2.0, -2.0, 2.0, 2.0)),
}


class WorkbenchFigureGenerator:
    """Create the PNG figures"""

    def __init__(self, output_dir: str = OUTPUT_DIR, pixels=(512, 512)):
        self.charts = ConvergenceChartEngine(output_dir)
        self.liouville = LiouvilleAnalysisEngine()
        self.pixels = pixels

    def create_domain_colorings(self):
        for name, (f, window) in DOMAIN_COLORINGS.items():
            rgb, invalid = domain_coloring_rgb(f, window, self.pixels)
            save_image(rgb, self.charts.output_dir / f"domain_{name}.ppm")
            self.charts.plot_domain_coloring(rgb, window, f, f"domain_{name}.png")
            print(f"Domain coloring of {f} saved ({int(invalid.sum())} black pixels)")

    def create_fd_convergence(self):
        frame = self.charts.fd_convergence_frame("z*sin(conj(z))", 0.4 + 0.3j, [2.0 ** -k for k in range(2, 14)])
        self.charts.plot_fd_convergence(frame, "z sin(conj z)")
        print("Finite-difference convergence chart saved")

    def create_pompeiu_convergence(self):
        frame = self.charts.pompeiu_convergence_frame("conj(z)", Disc(0j, 1.0), 0.5, [16, 32, 64, 128, 256, 512])
        self.charts.plot_pompeiu_convergence(frame, "conj(z) at zeta = 0.5")
        print("Pompeiu convergence chart saved")

    def create_liouville_bounds(self):
        table = self.liouville.liouville_bound_table("sin(z)", [1.0, 2.0, 3.0, 4.0], 12)
        self.charts.plot_liouville_bounds(table, "sin z")
        print("Liouville coefficient chart saved")

    def generate_all_visualizations(self):
        print("Generating workbench figures...")
        print("=" * 60)
        self.create_domain_colorings()
        self.create_fd_convergence()
        self.create_pompeiu_convergence()
        self.create_liouville_bounds()
        print("=" * 60)
        print(f"All figures saved to {self.charts.output_dir}/")


if __name__ == "__main__":
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    WorkbenchFigureGenerator().generate_all_visualizations()
