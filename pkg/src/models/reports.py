"""
CheckReport: the structured outcome of every theorem check, with its JSON form.

Floats are written with 17 significant digits and complex numbers as
[re, im] pairs, so a report parsed back from JSON re-serializes to the same
bytes.
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, Mapping, Optional

import numpy as np
import pandas as pd


class StructuralVariant(Enum):
    """Which residual the structural check uses"""

    PAPER_FORM = "paper"    # dw/dzbar + w dK/dzbar
    STRONG_FORM = "strong"  # d(Kw)/dzbar = K dw/dzbar + w dK/dzbar


class TransformKind(Enum):
    """Integrand used by the generalized Cauchy theorem"""

    NONE = "none"      # w
    MUL_K = "K"        # K w
    MUL_EXP_K = "expK"  # e^K w


def _is_finite_number(x) -> bool:
    if isinstance(x, complex):
        return math.isfinite(x.real) and math.isfinite(x.imag)
    return math.isfinite(float(x))


@dataclass(frozen=True)
class CheckReport:
    check: str
    inputs: Dict[str, Any]
    metrics: Dict[str, Any]
    tolerance: float
    passed: bool
    n_points: int = 0
    n_skipped: int = 0
    headline: Optional[str] = field(default=None, compare=False)

    @classmethod
    def from_headline(cls, check: str, inputs: Mapping[str, Any], metrics: Mapping[str, Any], headline: str,
                      tolerance: float, n_points: int = 0, n_skipped: int = 0) -> "CheckReport":
        """pass <=> metrics[headline] is finite and <= tolerance"""
        value = metrics[headline]
        passed = _is_finite_number(value) and abs(value) <= tolerance
        return cls(check, dict(inputs), dict(metrics), float(tolerance), bool(passed),
                   int(n_points), int(n_skipped), headline)

    @classmethod
    def computation(cls, check: str, inputs: Mapping[str, Any], metrics: Mapping[str, Any],
                    n_points: int = 0, n_skipped: int = 0) -> "CheckReport":
        """Report for a pure computation: always passes, tolerance 0"""
        return cls(check, dict(inputs), dict(metrics), 0.0, True, int(n_points), int(n_skipped), None)

    @property
    def headline_value(self):
        return None if self.headline is None else self.metrics[self.headline]

    def annotate(self, **metrics) -> "CheckReport":
        merged = {**self.metrics, **metrics}
        return CheckReport(self.check, self.inputs, merged, self.tolerance, self.passed,
                           self.n_points, self.n_skipped, self.headline)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "check": self.check,
            "inputs": self.inputs,
            "metrics": self.metrics,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "n_points": self.n_points,
            "n_skipped": self.n_skipped,
        }

    def to_json(self) -> str:
        return encode_json(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "CheckReport":
        data = json.loads(text)
        missing = {"check", "inputs", "metrics", "tolerance", "pass", "n_points", "n_skipped"} - set(data)
        if missing:
            raise ValueError(f"report is missing {sorted(missing)}")
        return cls(data["check"], data["inputs"], data["metrics"], data["tolerance"], data["pass"],
                   data["n_points"], data["n_skipped"])


def _encode_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == 0:
        return "0"  # no "-0"
    return "%.17g" % x


def encode_json(obj: Any) -> str:
    """Deterministic JSON with 17-significant-digit floats and [re, im] complex pairs"""
    if obj is None:
        return "null"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _encode_float(float(obj))
    if isinstance(obj, (complex, np.complexfloating)):
        c = complex(obj)
        return f"[{_encode_float(c.real)}, {_encode_float(c.imag)}]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, Enum):
        return json.dumps(obj.value)
    if isinstance(obj, Mapping):
        items = ", ".join(f"{json.dumps(str(k))}: {encode_json(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(encode_json(v) for v in obj) + "]"
    raise TypeError(f"cannot encode {type(obj).__name__} in a report")


def reports_to_frame(reports: Iterable[CheckReport]) -> pd.DataFrame:
    """Tabulate reports: one row per check"""
    rows = []
    for report in reports:
        value = report.headline_value
        rows.append({
            "check": report.check,
            "headline": report.headline or "",
            "value": abs(value) if value is not None else np.nan,
            "tolerance": report.tolerance,
            "pass": report.passed,
            "n_points": report.n_points,
            "n_skipped": report.n_skipped,
        })
    return pd.DataFrame(rows, columns=["check", "headline", "value", "tolerance", "pass", "n_points", "n_skipped"])
