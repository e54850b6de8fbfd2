"""
Quadrature: closed contours, line integrals and area integrals
"""

from .base import Contour, Region
from .contour import (Circle, Polygon, Parametric, PointOnContourError, sample_contour, line_integral,
                      values_on_nodes, winding_number, winding_number_detail, parse_contour, measure_total)
from .area import (Disc, Rectangle, IntegralEstimate, area_integral, area_integral_estimate,
                   singular_area_integral, singular_area_integral_estimate, channel_values,
                   enforce_skip_limit, parse_region, parse_resolution)
from .summation import compensated_sum, weighted_sum

__all__ = [
    'Contour', 'Region',
    'Circle', 'Polygon', 'Parametric', 'PointOnContourError',
    'sample_contour', 'line_integral', 'values_on_nodes', 'winding_number', 'winding_number_detail',
    'parse_contour', 'measure_total',
    'Disc', 'Rectangle', 'IntegralEstimate', 'area_integral', 'area_integral_estimate',
    'singular_area_integral', 'singular_area_integral_estimate', 'channel_values',
    'enforce_skip_limit', 'parse_region', 'parse_resolution',
    'compensated_sum', 'weighted_sum',
]
