""" Tests for src.models.integral_theorems. """

import cmath
import math

import numpy as np
import pytest

from src.errors import EvaluationError, InvalidGeometryError, UsageError
from src.expr import eval_jet, parse
from src.models import IntegralTheoremEngine, TransformKind
from src.quadrature import Circle, Disc, Rectangle

UNIT_DISC = Disc(0j, 1.0)


@pytest.fixture(scope="module")
def engine():
    return IntegralTheoremEngine()


class TestGreenIdentity:
    """Boundary integral of f dz against 2i times the area integral of df/dzbar."""

    @pytest.mark.parametrize("f", ["conj(z)", "z*conj(z)", "z^2 + conj(z)"])
    def test_unit_disc(self, engine, f):
        report = engine.green_identity_check(f, UNIT_DISC)

        assert report.passed
        assert report.metrics["difference"] <= 1e-7

    def test_conj_encloses_twice_i_times_area(self, engine):
        report = engine.green_identity_check("conj(z)", UNIT_DISC)

        assert report.metrics["lhs"] == pytest.approx(2j * np.pi, abs=1e-12)
        assert report.metrics["rhs"] == pytest.approx(2j * np.pi, abs=1e-12)

    def test_holomorphic_sides_vanish(self, engine):
        report = engine.green_identity_check("z^2", UNIT_DISC)

        assert abs(report.metrics["lhs"]) < 1e-13
        assert report.metrics["rhs"] == 0

    def test_dzbar_term(self, engine):
        # boundary integral of z dzbar is -2 pi i
        report = engine.green_identity_check("0", UNIT_DISC, g="z")

        assert report.metrics["lhs"] == pytest.approx(-2j * np.pi, abs=1e-12)
        assert report.passed

    def test_rectangle(self, engine):
        report = engine.green_identity_check("z*conj(z)^2", Rectangle(-1 + 0j, 2 + 1j, 16))

        assert report.passed


class TestGeneralizedCauchy:
    """Closed integrals under each transform, reported side by side."""

    def test_integrating_factor_annihilates(self, engine):
        report = engine.generalized_cauchy_check("exp(-conj(z))", "conj(z)", Circle(0j, 1.0),
                                                 TransformKind.MUL_EXP_K, 256)

        assert report.metrics["abs_integral"] <= 1e-10
        assert report.passed

    def test_multiplying_by_K_leaves_a_residue(self, engine):
        report = engine.generalized_cauchy_check("exp(-conj(z))", "conj(z)", Circle(0j, 1.0),
                                                 TransformKind.MUL_K, 256)

        assert abs(report.metrics["integral_value"] - 2j * np.pi) <= 1e-6
        assert not report.passed

    def test_companions_are_always_reported(self, engine):
        report = engine.generalized_cauchy_check("exp(-conj(z))", "conj(z)", Circle(0j, 1.0),
                                                 TransformKind.MUL_K, 256)

        assert abs(report.metrics["integral_expK"]) <= 1e-10
        assert abs(report.metrics["integral_K"] - 2j * np.pi) <= 1e-6
        assert "integral_none" in report.metrics

    def test_constant_K(self, engine):
        report = engine.generalized_cauchy_check("z^2", "3-2*i", Circle(0j, 1.0), TransformKind.MUL_K)

        assert report.passed

    def test_node_on_pole(self, engine):
        with pytest.raises(EvaluationError):
            engine.generalized_cauchy_check("1/(z-1)", "1", Circle(0j, 1.0))


class TestCauchyFormula:
    """Cauchy's integral and differentiation formulas."""

    def test_value(self, engine):
        assert engine.cauchy_eval("exp(z)", 0j, 1.0, 0.3) == pytest.approx(math.exp(0.3), abs=1e-10)

    def test_complex_point(self, engine):
        z = 0.3 + 0.1j

        assert abs(engine.cauchy_eval("exp(z)", 0j, 1.0, z, 0, 256) - cmath.exp(z)) <= 1e-10

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_derivatives_of_exp(self, engine, k):
        z = 0.3 + 0.1j

        assert abs(engine.cauchy_eval("exp(z)", 0j, 1.0, z, k, 256) - cmath.exp(z)) <= 1e-8

    def test_third_derivative_at_origin(self, engine):
        assert engine.cauchy_eval("exp(z)", 0j, 1.0, 0j, 3) == pytest.approx(1.0, abs=1e-10)

    def test_geometric_series(self, engine):
        assert engine.cauchy_eval("1/(1-z)", 0j, 0.5, 0.2) == pytest.approx(1.25, abs=1e-10)

    def test_point_too_close_to_circle(self, engine):
        with pytest.raises(InvalidGeometryError):
            engine.cauchy_eval("exp(z)", 0j, 1.0, 1.0 - 1e-9)

    def test_negative_order_is_rejected(self, engine):
        with pytest.raises(UsageError):
            engine.cauchy_eval("exp(z)", 0j, 1.0, 0j, -1)

    @pytest.mark.parametrize("text", ["sin(z)", "exp(z)*z", "1/(2-z)"])
    def test_first_derivative_matches_jet(self, engine, text):
        z = 0.2 - 0.1j

        assert abs(engine.cauchy_eval(text, 0j, 1.0, z, 1) - eval_jet(parse(text), z).d_z) <= 1e-10

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_derivative_matches_difference_of_lower_order(self, engine, k):
        z, h = 0.1 + 0.2j, 1e-4
        forward = engine.cauchy_eval("sin(z)*exp(z)", 0j, 1.0, z + h, k - 1)
        backward = engine.cauchy_eval("sin(z)*exp(z)", 0j, 1.0, z - h, k - 1)

        assert abs((forward - backward) / (2 * h) - engine.cauchy_eval("sin(z)*exp(z)", 0j, 1.0, z, k)) <= 1e-6


class TestTaylorCoefficients:
    """a_k from contour quadrature."""

    def test_exp(self, engine):
        coefficients = engine.taylor_coefficients("exp(z)", 1.0, 8)

        for k, a in enumerate(coefficients):
            assert abs(a - 1 / math.factorial(k)) <= 1e-10

    def test_geometric(self, engine):
        coefficients = engine.taylor_coefficients("1/(1-z)", 0.5, 8)

        assert max(abs(a - 1) for a in coefficients) <= 1e-10

    def test_linear_growth(self, engine):
        coefficients = engine.taylor_coefficients("3*z", 2.0, 6)

        assert abs(coefficients[1] - 3) <= 1e-10
        assert max(abs(a) for k, a in enumerate(coefficients) if k != 1) <= 1e-10

    def test_needs_more_nodes_than_coefficients(self, engine):
        with pytest.raises(InvalidGeometryError):
            engine.taylor_coefficients("exp(z)", 1.0, 16, n=16)

    def test_negative_k_max_is_rejected(self, engine):
        with pytest.raises(UsageError):
            engine.taylor_coefficients("exp(z)", 1.0, -1)


class TestCauchyEstimate:
    """|w^(n)(a)| <= n! M / R^n."""

    def test_exp(self, engine):
        report = engine.cauchy_estimate_check("exp(z)", 0j, 1.0, 5)

        assert report.passed
        assert report.metrics["M"] == pytest.approx(math.e)

    def test_cube_is_tight(self, engine):
        report = engine.cauchy_estimate_check("z^3", 0j, 1.0, 5)

        assert report.passed
        assert report.metrics["min_slack"] >= -1e-9
        assert report.metrics["ratio_3"] == pytest.approx(1.0, rel=1e-8)

    def test_geometric(self, engine):
        report = engine.cauchy_estimate_check("1/(1-z)", 0j, 0.5, 5)

        assert report.passed
        assert report.metrics["M"] == pytest.approx(2.0)
        for k in range(6):
            assert report.metrics[f"abs_derivative_{k}"] == pytest.approx(math.factorial(k), rel=1e-9)

    def test_negative_n_max_is_rejected(self, engine):
        with pytest.raises(UsageError):
            engine.cauchy_estimate_check("exp(z)", 0j, 1.0, -1)

    def test_order_zero_only(self, engine):
        report = engine.cauchy_estimate_check("exp(z)", 0j, 1.0, 0)

        assert report.passed
        assert "abs_derivative_1" not in report.metrics


class TestPompeiu:
    """Reconstruction of smooth functions from boundary and area terms."""

    def test_conj(self, engine):
        result = engine.pompeiu_reconstruct("conj(z)", UNIT_DISC.with_resolution(256), 0.5)

        assert abs(result.value - 0.5) <= 1e-3
        assert abs(result.boundary_term) <= 1e-10
        assert result.area_term == pytest.approx(0.5, abs=1e-3)
        assert result.report.passed

    def test_error_shrinks_with_resolution(self, engine):
        coarse = engine.pompeiu_reconstruct("conj(z)", UNIT_DISC.with_resolution(256), 0.5).report
        fine = engine.pompeiu_reconstruct("conj(z)", UNIT_DISC.with_resolution(512), 0.5).report

        # both may already sit at round-off
        assert fine.metrics["error"] < coarse.metrics["error"] or fine.metrics["error"] <= 1e-12

    def test_refinement_on_a_varying_area_density(self, engine):
        # dw/dzbar = 2|z|^2; w(0.8) = 0.512
        reports = [engine.pompeiu_reconstruct("z*conj(z)^2", UNIT_DISC.with_resolution(n), 0.8).report
                   for n in (8, 16, 32)]
        errors = [report.metrics["error"] for report in reports]

        assert errors[0] > 1e-10
        for coarse, fine in zip(errors, errors[1:]):
            assert fine < coarse / 4 or fine <= 1e-13

    def test_holomorphic_reduces_to_cauchy(self, engine):
        result = engine.pompeiu_reconstruct("exp(z)", UNIT_DISC, 0.3j)

        assert abs(result.area_term) <= 1e-6
        assert result.value == pytest.approx(cmath.exp(0.3j), abs=1e-10)

    def test_modulus_squared(self, engine):
        result = engine.pompeiu_reconstruct("z*conj(z)", UNIT_DISC, 0j)

        assert result.boundary_term == pytest.approx(1.0, abs=1e-10)
        assert result.area_term == pytest.approx(-1.0, abs=1e-10)
        assert abs(result.value) <= 1e-10

    def test_zeta_outside(self, engine):
        with pytest.raises(InvalidGeometryError):
            engine.pompeiu_reconstruct("conj(z)", UNIT_DISC, 1.5)


class TestMorera:
    """Probe-circle classification at probe radius 0.05."""

    @pytest.mark.parametrize("w, region", [
        ("z^2", UNIT_DISC), ("exp(z)", UNIT_DISC), ("1/(1-z)", Disc(0j, 0.5)),
    ])
    def test_holomorphic(self, engine, w, region):
        report = engine.morera_classify(w, region, 25, 0.05)

        assert report.passed
        assert report.metrics["holomorphic"] == 1

    @pytest.mark.parametrize("w", ["conj(z)", "exp(-conj(z))", "z*conj(z)"])
    def test_not_holomorphic(self, engine, w):
        report = engine.morera_classify(w, UNIT_DISC, 25, 0.05)

        assert not report.passed
        assert report.metrics["holomorphic"] == 0

    def test_conj_probe_integral(self, engine):
        report = engine.morera_classify("conj(z)", UNIT_DISC, 25, 0.05)

        assert report.metrics["max_abs_integral"] == pytest.approx(2 * np.pi * 0.05 ** 2)

    def test_probe_on_pole_is_reported(self, engine):
        report = engine.morera_classify("1/(z-0.05)", Rectangle(-0.5 - 0.5j, 0.5 + 0.5j), 9, 0.05)

        assert report.metrics["failed_probes"] == 1
        assert report.n_skipped == 1
        assert not report.passed

    def test_probes_must_fit(self, engine):
        with pytest.raises(InvalidGeometryError):
            engine.morera_classify("z", Disc(0j, 0.1), 4, 0.5)

    @pytest.mark.parametrize("count", [0, -3])
    def test_circle_count_must_be_positive(self, engine, count):
        with pytest.raises(UsageError):
            engine.morera_classify("z", UNIT_DISC, count, 0.05)


class TestGeneralizedFormula:
    """Cauchy integral formula for the transformed function."""

    def test_integrating_factor(self, engine):
        report = engine.generalized_cauchy_formula_check("exp(-conj(z))", "conj(z)", 0j, 1.0, 0.3,
                                                         TransformKind.MUL_EXP_K)

        assert report.passed
        assert report.metrics["error_K"] > 1e-3

    def test_classical(self, engine):
        report = engine.generalized_cauchy_formula_check("sin(z)", "1", 0j, 1.0, 0.2 + 0.2j)

        assert report.passed
        assert report.metrics["error_none"] <= 1e-10
