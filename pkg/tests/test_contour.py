""" Tests for src.quadrature.contour. """

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import EvaluationError, InvalidGeometryError
from src.expr import parse
from src.quadrature import (Circle, Parametric, PointOnContourError, Polygon, line_integral, measure_total,
                            parse_contour, sample_contour, winding_number, winding_number_detail)

UNIT = Circle(0j, 1.0)


class TestClassicalCauchy:
    """Closed integrals over the unit circle at 256 nodes."""

    @pytest.mark.parametrize("text", ["z^2", "exp(z)"])
    def test_holomorphic_integrals_vanish(self, text):
        assert abs(line_integral(parse(text), UNIT, 256)) <= 1e-12

    def test_residue_of_reciprocal(self):
        assert abs(line_integral(parse("1/z"), UNIT, 256) - 2j * np.pi) <= 1e-12

    def test_pole_on_contour_is_an_error(self):
        with pytest.raises(EvaluationError):
            line_integral(parse("1/(z-1)"), UNIT, 256)

    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(0.1, 3))
    @settings(max_examples=50)
    def test_polynomials_integrate_to_zero_on_any_circle(self, x, y, r):
        value = line_integral(parse("3*z^4 - (2-i)*z^2 + z - 7"), Circle(complex(x, y), r), 128)

        scale = (abs(complex(x, y)) + r) ** 4 * r
        assert abs(value) <= 1e-11 * max(1.0, scale)

    def test_trapezoid_converges_spectrally(self):
        errors = [abs(line_integral(parse("exp(z)/z"), UNIT, n) - 2j * np.pi) for n in (4, 8, 16)]

        # each doubling of the node count gains at least a factor of ten
        assert errors[1] <= errors[0] / 10
        assert errors[2] <= errors[1] / 10

    @pytest.mark.parametrize("contour", [UNIT, Polygon((-1 - 1j, 2 - 1j, 2 + 1j, -1 + 1j))])
    def test_linear_in_the_integrand(self, contour):
        f = line_integral(parse("conj(z)*exp(z)"), contour)
        g = line_integral(parse("z^3 + 1/(z-3)"), contour)
        combined = line_integral(parse("(2-i)*(conj(z)*exp(z)) + (0.5+3*i)*(z^3 + 1/(z-3))"), contour)

        expected = (2 - 1j) * f + (0.5 + 3j) * g
        assert abs(combined - expected) <= 1e-12 * max(1.0, abs(f), abs(g))


class TestOrientation:
    """Reversal negates every integral exactly."""

    @pytest.mark.parametrize("contour", [
        Circle(0.5j, 2.0),
        Polygon((0j, 1 + 0j, 1 + 1j, 1j)),
        Parametric.from_callables(lambda t: 2 * np.cos(t) + 1j * np.sin(t),
                                  lambda t: -2 * np.sin(t) + 1j * np.cos(t), 64),
    ])
    def test_reversal_negates_exactly(self, contour):
        f = parse("conj(z)*exp(z) + z^3")

        assert line_integral(f, contour.reversed()) == -line_integral(f, contour)

    def test_measure_sums_to_zero(self):
        assert abs(measure_total(Circle(1 + 1j, 0.5))) < 1e-14
        assert abs(measure_total(Polygon((0j, 2 + 0j, 1 + 3j)))) < 1e-14

    def test_orientation_must_be_unit(self):
        with pytest.raises(InvalidGeometryError):
            Circle(0j, 1.0, 2)

    def test_sample_nodes_and_weights(self):
        nodes, dz = sample_contour(Circle(0j, 2.0), 8)

        assert nodes.shape == dz.shape == (8,)
        assert nodes[0] == 2
        assert dz[0] == pytest.approx(2j * 2 * np.pi / 8)


class TestPolygon:
    """Gauss-Legendre edges."""

    def test_conj_integral_is_twice_i_times_area(self):
        square = Polygon((0j, 1 + 0j, 1 + 1j, 1j))

        assert line_integral(parse("conj(z)"), square) == pytest.approx(2j, abs=1e-14)

    def test_repeated_closing_vertex_is_dropped(self):
        assert Polygon((0j, 1 + 0j, 1j, 0j)).vertices == (0j, 1 + 0j, 1j)

    def test_degenerate_polygon(self):
        with pytest.raises(InvalidGeometryError):
            Polygon((0j, 1 + 0j, 0j))

    def test_distance_to_edge(self):
        square = Polygon((0j, 2 + 0j, 2 + 2j, 2j))

        assert square.distance_to(1 + 1j) == pytest.approx(1.0)
        assert square.distance_to(3 + 1j) == pytest.approx(1.0)


class TestParametric:
    """Curves given by samples, Fourier-resampled on demand."""

    @pytest.fixture
    def ellipse(self):
        return Parametric.from_callables(lambda t: 2 * np.cos(t) + 1j * np.sin(t),
                                         lambda t: -2 * np.sin(t) + 1j * np.cos(t), 64)

    def test_enclosed_area(self, ellipse):
        assert line_integral(parse("conj(z)"), ellipse) == pytest.approx(2j * np.pi * 2.0, abs=1e-12)

    def test_resampling(self, ellipse):
        assert line_integral(parse("conj(z)"), ellipse, 128) == pytest.approx(4j * np.pi, abs=1e-12)

    def test_too_few_samples(self):
        with pytest.raises(InvalidGeometryError):
            Parametric(np.ones(4), np.ones(4))


class TestWindingNumber:
    """Winding numbers from the integral of d(zeta)/(zeta - z)."""

    def test_circle(self):
        assert winding_number(UNIT, 0.2 + 0.1j) == 1
        assert winding_number(UNIT, 2.0) == 0
        assert winding_number(UNIT.reversed(), 0j) == -1

    def test_polygon(self):
        triangle = Polygon((0j, 4 + 0j, 4j))

        assert winding_number(triangle, 1 + 1j) == 1
        assert winding_number(triangle, -1 - 1j) == 0

    def test_point_close_to_curve_settles(self):
        number, residual = winding_number_detail(UNIT, 0.999)

        assert number == 1
        assert residual < 1e-6

    def test_point_on_contour(self):
        with pytest.raises(PointOnContourError):
            winding_number(UNIT, 1.0)


class TestParseContour:
    """Contour string syntax."""

    def test_circle(self):
        assert parse_contour("circle:0,0,1") == Circle(0j, 1.0)
        assert parse_contour("circle:1,-1,2,cw") == Circle(1 - 1j, 2.0, -1)

    def test_polygon(self):
        assert parse_contour("poly:0,0;1,0;0,1;cw") == Polygon((0j, 1 + 0j, 1j), -1)

    def test_describe_round_trips(self):
        for text in ("circle:0.5,-1.0,2.0,cw", "poly:0.0,0.0;3.0,0.0;0.0,1.0"):
            assert parse_contour(text).describe() == text

    @pytest.mark.parametrize("text", ["circle:0,0", "circle:0,0,-1", "poly:0,0;1,1", "square:1", "circle:a,b,c"])
    def test_malformed(self, text):
        with pytest.raises(InvalidGeometryError):
            parse_contour(text)
