""" Tests for src.models.reports. """

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.models import CheckReport, TransformKind, encode_json, reports_to_frame


@pytest.fixture
def sample_report():
    return CheckReport.from_headline(
        "generalized_cauchy",
        {"w": "exp(-conj(z))", "transform": TransformKind.MUL_K},
        {"integral_value": 2j * math.pi, "abs_integral": 2 * math.pi, "ratio": float("nan")},
        "abs_integral",
        1e-8,
        256,
        0,
    )


class TestCheckReport:
    """Pass rule and annotation."""

    def test_pass_rule(self):
        inside = CheckReport.from_headline("x", {}, {"m": 1e-11}, "m", 1e-10)
        outside = CheckReport.from_headline("x", {}, {"m": 2e-10}, "m", 1e-10)
        undefined = CheckReport.from_headline("x", {}, {"m": float("nan")}, "m", 1e-10)

        assert inside.passed
        assert not outside.passed
        assert not undefined.passed

    def test_computation_always_passes(self):
        report = CheckReport.computation("taylor", {"w": "z"}, {"a_0": 0j})

        assert report.passed
        assert report.tolerance == 0
        assert report.headline_value is None

    def test_annotate_keeps_verdict(self, sample_report):
        annotated = sample_report.annotate(holomorphic_precondition=0)

        assert annotated.passed == sample_report.passed
        assert annotated.metrics["holomorphic_precondition"] == 0
        assert "holomorphic_precondition" not in sample_report.metrics


class TestEncoding:
    """Deterministic JSON."""

    def test_schema(self, sample_report):
        data = json.loads(sample_report.to_json())

        assert list(data) == ["check", "inputs", "metrics", "tolerance", "pass", "n_points", "n_skipped"]
        assert data["pass"] is False
        assert data["inputs"]["transform"] == "K"

    def test_complex_as_pair(self, sample_report):
        data = json.loads(sample_report.to_json())

        assert data["metrics"]["integral_value"] == [0, pytest.approx(2 * math.pi)]

    def test_non_finite_as_null(self, sample_report):
        assert json.loads(sample_report.to_json())["metrics"]["ratio"] is None

    def test_seventeen_digits(self):
        assert encode_json(0.1) == "0.10000000000000001"

    def test_numpy_scalars(self):
        assert encode_json({"n": np.int64(3), "ok": np.bool_(True), "c": np.complex128(1 - 2j)}) == \
            '{"n": 3, "ok": true, "c": [1, -2]}'

    def test_unsupported_type(self):
        with pytest.raises(TypeError):
            encode_json({"bad": object()})

    def test_round_trip(self, sample_report):
        text = sample_report.to_json()

        assert CheckReport.from_json(text).to_json() == text

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=6))
    def test_round_trip_of_arbitrary_floats(self, values):
        report = CheckReport.computation("c", {}, {f"m{i}": v for i, v in enumerate(values)})
        text = report.to_json()

        assert CheckReport.from_json(text).to_json() == text

    def test_missing_keys(self):
        with pytest.raises(ValueError):
            CheckReport.from_json('{"check": "x"}')


class TestReportsFrame:
    """Summary tables."""

    def test_columns_and_values(self, sample_report):
        computed = CheckReport.computation("solve", {}, {})
        frame = reports_to_frame([sample_report, computed])

        assert list(frame.columns) == ["check", "headline", "value", "tolerance", "pass", "n_points", "n_skipped"]
        assert frame.loc[0, "value"] == pytest.approx(2 * math.pi)
        assert not frame.loc[0, "pass"]
        assert np.isnan(frame.loc[1, "value"])
