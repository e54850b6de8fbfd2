""" Tests for src.visualization.charts. """

import numpy as np
import pytest

from src.models import LiouvilleAnalysisEngine
from src.quadrature import Disc
from src.visualization import ConvergenceChartEngine, domain_coloring_rgb


@pytest.fixture
def charts(tmp_path):
    return ConvergenceChartEngine(tmp_path)


class TestSweeps:
    """Convergence frames."""

    def test_fd_order_is_two(self, charts):
        frame = charts.fd_convergence_frame("z*sin(conj(z))", 0.4 + 0.3j, [1e-2, 5e-3, 2.5e-3])

        assert list(frame.columns) == ["h", "error_dz", "error_dzbar", "order"]
        assert np.isnan(frame["order"].iloc[0])
        assert (frame["order"].iloc[1:] > 1.9).all()

    def test_pompeiu_frame(self, charts):
        frame = charts.pompeiu_convergence_frame("z*conj(z)", Disc(0j, 1.0), 0.2, [16, 32])

        assert list(frame["resolution"]) == [16, 32]
        assert (frame["error"] < 1e-3).all()


class TestFigures:
    """PNG output."""

    def test_fd_chart(self, charts, tmp_path):
        frame = charts.fd_convergence_frame("exp(-conj(z))", 0.1j, [1e-1, 5e-2, 2.5e-2])
        path = charts.plot_fd_convergence(frame, "exp(-conj z)")

        assert path == tmp_path / "fd_convergence.png"
        assert path.stat().st_size > 0

    def test_liouville_chart(self, charts):
        table = LiouvilleAnalysisEngine().liouville_bound_table("sin(z)", [1.0, 2.0], 6)

        assert charts.plot_liouville_bounds(table, "sin z").exists()

    def test_domain_coloring_chart(self, charts):
        rgb, _ = domain_coloring_rgb("z", (-1, -1, 1, 1), (16, 16))

        assert charts.plot_domain_coloring(rgb, (-1, -1, 1, 1), "z", "z.png").exists()
