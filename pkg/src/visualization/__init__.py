"""
Figures: domain-coloring images and convergence charts
"""

from .domain_coloring import colorize, domain_coloring_rgb, pixel_centers, render_domain_coloring, save_image
from .charts import ConvergenceChartEngine

__all__ = [
    'colorize',
    'domain_coloring_rgb',
    'pixel_centers',
    'render_domain_coloring',
    'save_image',
    'ConvergenceChartEngine',
]
