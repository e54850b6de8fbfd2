""" Tests for src.models.structural_models. """

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import ExcessiveSkipsError
from src.expr import Constant, Conj, Fn, Neg, VarZ, format_expr, parse
from src.models import StructuralAnalysisEngine, StructuralVariant
from src.quadrature import Disc, Rectangle

GRID = Rectangle(-1 - 1j, 1 + 1j, 32)
PHIS = ["1", "2+i", "z", "sin(z)"]
KS = ["conj(z)", "z", "1 + z*sin(conj(z))", "conj(z)^2", "0"]


@pytest.fixture
def engine():
    return StructuralAnalysisEngine()


class TestStructuralResidual:
    """Residual of dw/dzbar + w dK/dzbar, and the product-rule variant."""

    def test_structural_solution(self, engine):
        report = engine.structural_residual("exp(-conj(z))", "conj(z)", GRID)

        assert report.passed
        assert report.metrics["max_abs"] <= 1e-12
        assert report.metrics["max_abs_dK_dzbar"] == 1.0

    @pytest.mark.parametrize("variant", list(StructuralVariant))
    def test_classical_analytic_with_constant_K(self, engine, variant):
        report = engine.structural_residual("z^2", "5+2*i", GRID, variant)

        assert report.metrics["max_abs"] == 0.0

    def test_conj_is_not_holomorphic(self, engine):
        report = engine.structural_residual("conj(z)", "0", GRID)

        assert report.metrics["max_abs"] == 1.0
        assert not report.passed

    def test_report_counts_points(self, engine):
        report = engine.structural_residual("z", "z", GRID)

        assert report.n_points == 1024
        assert report.n_skipped == 0
        assert report.tolerance == 1e-10

    def test_point_list(self, engine):
        report = engine.structural_residual("exp(-z)", "z", [0j, 1 + 1j, -2.5j])

        assert report.n_points == 3
        assert report.passed

    def test_e_to_the_z_over_z_leaves_the_condition_classical(self, engine):
        # dK/dzbar vanishes for K = e^z / z, unlike K = conj(z)
        report = engine.structural_residual("exp(z)", "exp(z)/z", Rectangle(0.5 + 0.5j, 1.5 + 1.5j, 16))

        assert report.metrics["max_abs_dK_dzbar"] == 0.0
        assert report.passed

    def test_excessive_skips(self, engine):
        with pytest.raises(ExcessiveSkipsError):
            engine.structural_residual("1/z", "0", Rectangle(-1 - 1j, 1 + 1j, 9))

    def test_variants_coincide_for_unit_K(self, engine):
        for w in ("conj(z)*z", "exp(-conj(z))", "sin(z)"):
            paper = engine.structural_residual(w, "1", GRID, StructuralVariant.PAPER_FORM)
            strong = engine.structural_residual(w, "1", GRID, StructuralVariant.STRONG_FORM)

            assert paper.metrics["max_abs"] == strong.metrics["max_abs"]
            assert paper.metrics["mean_abs"] == strong.metrics["mean_abs"]

    def test_strong_form_detects_the_trivial_term(self, engine):
        # w = e^(-K) solves the additive (PAPER_FORM) condition; d(Kw)/dzbar = w dK/dzbar (1 - K) does not vanish
        paper = engine.structural_residual("exp(-conj(z))", "conj(z)", GRID, StructuralVariant.PAPER_FORM)
        strong = engine.structural_residual("exp(-conj(z))", "conj(z)", GRID, StructuralVariant.STRONG_FORM)

        assert paper.passed
        assert not strong.passed


@pytest.mark.parametrize("phi", PHIS)
@pytest.mark.parametrize("K", KS)
def test_constructed_solutions_close_the_residual(phi, K):
    engine = StructuralAnalysisEngine()
    w = engine.build_structural_solution(phi, K)
    report = engine.structural_residual(w, K, GRID, StructuralVariant.PAPER_FORM)

    assert report.metrics["max_abs"] <= 1e-10


CONJ_FREE = ["1", "z", "z^2 - 3", "exp(z)", "sin(z)*cos(z)", "(1+2*i)*z^3", "1/(z+5)", "sqrt(z+4)"]
ANY_K = ["conj(z)", "z*conj(z)", "sin(conj(z))", "exp(conj(z)/2)", "conj(z)^2 + z", "cos(z)", "0", "1 + z*sin(conj(z))"]


@given(st.sampled_from(CONJ_FREE), st.sampled_from(ANY_K))
@settings(max_examples=50, deadline=None)
def test_constructor_checker_closure(phi, K):
    engine = StructuralAnalysisEngine()
    w = engine.build_structural_solution(phi, K)

    assert engine.structural_residual(w, K, Rectangle(-1 - 1j, 1 + 1j, 16)).metrics["max_abs"] <= 1e-10


class TestBuildStructuralSolution:
    """w = phi exp(-K)."""

    def test_unit_phi(self):
        w = StructuralAnalysisEngine.build_structural_solution("1", "conj(z)")

        assert w == Fn("exp", Neg(Conj(VarZ())))

    def test_constant_K_folds(self):
        assert StructuralAnalysisEngine.build_structural_solution("2+i", "0") == Constant(2 + 1j)

    def test_entire_phi(self):
        w = StructuralAnalysisEngine.build_structural_solution("z", "conj(z)")

        assert format_expr(w) == "(z*exp((-conj(z))))"


class TestCbvResidual:
    """Residual of dw/dzbar + A w + B conj(w) - phi."""

    @pytest.mark.parametrize("w, A, B, phi", [
        ("exp(-conj(z))", "1", "0", "0"),
        ("z^3", "0", "0", "0"),
        ("conj(z)", "0", "0", "1"),
        ("exp(-conj(z))", "0", "exp(z-conj(z))", "0"),
    ])
    def test_solutions(self, engine, w, A, B, phi):
        report = engine.cbv_residual(w, A, B, phi, GRID)

        assert report.passed, report.metrics

    def test_non_solution(self, engine):
        assert not engine.cbv_residual("conj(z)", "0", "0", "0", GRID).passed


class TestCauchyRiemann:
    """The real Cauchy-Riemann system."""

    def test_analytic(self, engine):
        assert engine.cauchy_riemann_check("exp(z)*z^2", GRID).passed

    def test_norm_is_twice_the_zbar_derivative(self, engine):
        report = engine.cauchy_riemann_check("conj(z)", GRID)

        assert report.metrics["max_norm"] == pytest.approx(2.0)
        assert not report.passed


class TestStructuralSystem:
    """Both structural derivatives."""

    def test_constant_phi_solves_both(self, engine):
        assert engine.structural_system_check("3*exp(-conj(z)*z)", "z*conj(z)", GRID).passed

    def test_entire_phi_solves_only_the_zbar_equation(self, engine):
        report = engine.structural_system_check("z*exp(-conj(z))", "conj(z)", GRID)

        assert report.metrics["max_abs_dzbar"] <= 1e-12
        assert report.metrics["max_abs_dz"] > 0.1
        assert not report.passed


class TestConstancyConditions:
    """Sufficient conditions for constancy of an analytic function."""

    def test_constant(self, engine):
        report = engine.constancy_conditions("2+i", GRID)

        assert report.passed
        assert report.metrics["constant"] == 1
        assert report.metrics["holds_derivative"] == 1

    def test_zero_is_constant(self, engine):
        assert engine.constancy_conditions("0", GRID).metrics["constant"] == 1

    def test_non_constant_analytic_meets_no_condition(self, engine):
        report = engine.constancy_conditions("exp(z)", GRID)

        assert report.passed
        assert report.metrics["constant"] == 0
        assert not any(report.metrics[f"holds_{name}"] for name in
                       ("derivative", "modulus_spread", "conj_dzbar", "real_or_imag_spread"))

    def test_non_analytic_is_vacuous(self, engine):
        # Re w constant but w = i Im(z) is not analytic
        report = engine.constancy_conditions("(z-conj(z))/2", GRID)

        assert report.metrics["analytic"] == 0
        assert report.metrics["holds_real_or_imag_spread"] == 1
        assert report.passed
