""" Tests for src.quadrature.area. """

import numpy as np
import pytest

from src.errors import ExcessiveSkipsError, InvalidGeometryError
from src.expr import parse
from src.quadrature import (Circle, Disc, Polygon, Rectangle, area_integral, area_integral_estimate,
                            enforce_skip_limit, parse_region, parse_resolution, singular_area_integral)

UNIT_DISC = Disc(0j, 1.0)


class TestAreaIntegral:
    """Tensor-product quadrature over discs and rectangles."""

    def test_disc_area(self):
        assert area_integral(parse("1"), UNIT_DISC) == pytest.approx(np.pi, abs=1e-13)

    def test_disc_second_moment(self):
        assert area_integral(parse("z*conj(z)"), Disc(0j, 2.0, 32)) == pytest.approx(8 * np.pi, abs=1e-12)

    def test_off_center_disc(self):
        # mean of z over a disc is its center
        disc = Disc(1 - 2j, 0.5, 16)

        assert area_integral(parse("z"), disc) == pytest.approx((1 - 2j) * np.pi * 0.25, abs=1e-13)

    def test_rectangle_moment(self):
        rect = Rectangle(0j, 1 + 2j, 8)

        # integral of x^2 over [0,1] x [0,2]
        assert area_integral(parse("((z+conj(z))/2)^2"), rect) == pytest.approx(2.0 / 3.0, abs=1e-14)

    def test_derivative_channels(self):
        # d(z conj z)/dzbar = z integrates to 0 over a centered disc
        assert abs(area_integral(parse("z*conj(z)"), UNIT_DISC, "d_zbar")) < 1e-13
        assert area_integral(parse("conj(z)^2"), Disc(0j, 1.0, 16), "d_zbar") == pytest.approx(0.0, abs=1e-13)

    def test_unknown_channel(self):
        with pytest.raises(ValueError):
            area_integral(parse("z"), UNIT_DISC, "d_x")

    def test_estimate_counts_points(self):
        estimate = area_integral_estimate(parse("1"), Disc(0j, 1.0, (8, 12)))

        assert estimate.n_points == 96
        assert estimate.n_skipped == 0


class TestSingularAreaIntegral:
    """The weakly singular kernel in polar coordinates about zeta."""

    @pytest.mark.parametrize("zeta", [0j, 0.5, -0.3 + 0.6j])
    def test_cauchy_transform_of_one(self, zeta):
        # integral over the unit disc of 1/(z - zeta) is -pi conj(zeta)
        value = singular_area_integral(parse("1"), UNIT_DISC, zeta)

        assert value == pytest.approx(-np.pi * np.conj(zeta), abs=1e-12)

    def test_cauchy_transform_of_one_at_random_points(self):
        rng = np.random.default_rng(11)
        radius = 0.95 * np.sqrt(rng.uniform(0.0, 1.0, 20))
        angle = rng.uniform(0.0, 2.0 * np.pi, 20)
        one = parse("1")

        for zeta in radius * np.exp(1j * angle):
            value = singular_area_integral(one, UNIT_DISC, zeta)
            assert abs(value + np.pi * np.conj(zeta)) <= 1e-12

    def test_linear_in_the_integrand(self):
        zeta = 0.3 - 0.2j
        f = singular_area_integral(parse("conj(z)"), UNIT_DISC, zeta)
        g = singular_area_integral(parse("exp(z)"), UNIT_DISC, zeta)
        combined = singular_area_integral(parse("(2-i)*conj(z) + (0.5+3*i)*exp(z)"), UNIT_DISC, zeta)

        expected = (2 - 1j) * f + (0.5 + 3j) * g
        assert abs(combined - expected) <= 1e-12 * max(1.0, abs(f), abs(g))

    @pytest.mark.parametrize("text, exact", [
        ("1", -np.pi * 0.8),
        # z = zeta + (z - zeta) splits into pi and zeta times the transform of one
        ("z", np.pi - np.pi * 0.8 * 0.8),
    ])
    def test_refinement_converges_at_second_order(self, text, exact):
        f = parse(text)
        errors = [abs(singular_area_integral(f, Disc(0j, 1.0, n), 0.8) - exact) for n in (8, 16, 32)]

        for coarse, fine in zip(errors, errors[1:]):
            assert fine <= coarse / 4 or fine <= 1e-13

    def test_zeta_must_be_interior(self):
        with pytest.raises(InvalidGeometryError):
            singular_area_integral(parse("1"), UNIT_DISC, 1.0)

    def test_discs_only(self):
        with pytest.raises(InvalidGeometryError):
            singular_area_integral(parse("1"), Rectangle(-1 - 1j, 1 + 1j), 0j)


class TestSkips:
    """Skip census on grids."""

    def test_limit(self):
        enforce_skip_limit(1, 1000, 1e-3)
        with pytest.raises(ExcessiveSkipsError) as info:
            enforce_skip_limit(2, 1000, 1e-3)

        assert info.value.n_skipped == 2
        assert info.value.n_points == 1000


class TestRegions:
    """Region geometry and string syntax."""

    def test_disc_lattice_includes_center_and_rim(self):
        lattice = Disc(1j, 2.0, (9, 16)).lattice()

        assert lattice[0] == 1j
        assert lattice.size == 1 + 8 * 16
        assert np.max(np.abs(lattice - 1j)) == pytest.approx(2.0)

    def test_rectangle_lattice_is_inclusive(self):
        lattice = Rectangle(-1 - 1j, 1 + 1j, 9).lattice()

        assert lattice.size == 81
        assert lattice[0] == -1 - 1j
        assert lattice[-1] == 1 + 1j
        assert 0j in lattice

    def test_boundaries(self):
        assert UNIT_DISC.boundary() == Circle(0j, 1.0)
        assert isinstance(Rectangle(0j, 1 + 1j).boundary(), Polygon)

    def test_probe_centers_stay_inside(self):
        disc = Disc(0j, 0.5)
        centers = disc.probe_centers(25, 0.05)

        assert centers.size == 25
        assert np.all(np.abs(centers) <= 0.45 + 1e-12)

    def test_parse_region(self):
        assert parse_region("disc:0,0,1", "16") == Disc(0j, 1.0, (16, 16))
        assert parse_region("rect:-1,-1,1,1", (32, 8)) == Rectangle(-1 - 1j, 1 + 1j, (32, 8))

    def test_parse_resolution(self):
        assert parse_resolution("64") == (64, 64)
        assert parse_resolution("16,32") == (16, 32)
        assert parse_resolution(None) is None

    @pytest.mark.parametrize("text", ["disc:0,0", "disc:0,0,0", "rect:1,1,0,0", "ring:0,0,1", "rect:a,b,c,d"])
    def test_malformed_regions(self, text):
        with pytest.raises(InvalidGeometryError):
            parse_region(text)

    def test_resolution_floor(self):
        with pytest.raises(InvalidGeometryError):
            Disc(0j, 1.0, 4)
