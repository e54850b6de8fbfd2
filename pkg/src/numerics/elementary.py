"""
Elementary-function catalogue for jet evaluation.

Every entry is holomorphic away from its singular point; the conjugation and
negation ids are handled structurally by the jet algebra instead.
"""

from dataclasses import dataclass
from typing import Callable, Dict
import numpy as np


@dataclass(frozen=True)
class ElementaryFunction:
    name: str
    value: Callable[[np.ndarray], np.ndarray]
    derivative: Callable[[np.ndarray, np.ndarray], np.ndarray]  # (argument, value) -> F'(argument)
    singular_at_zero: bool = False


def _recip(x):
    return 1.0 / x


CATALOGUE: Dict[str, ElementaryFunction] = {
    "exp": ElementaryFunction("exp", np.exp, lambda x, fx: fx),
    # principal branch, cut along the negative real axis
    "ln": ElementaryFunction("ln", np.log, lambda x, fx: 1.0 / x, singular_at_zero=True),
    "sin": ElementaryFunction("sin", np.sin, lambda x, fx: np.cos(x)),
    "cos": ElementaryFunction("cos", np.cos, lambda x, fx: -np.sin(x)),
    "sqrt": ElementaryFunction("sqrt", np.sqrt, lambda x, fx: 0.5 / fx, singular_at_zero=True),
    "recip": ElementaryFunction("recip", _recip, lambda x, fx: -(fx * fx), singular_at_zero=True),
}

STRUCTURAL_IDS = frozenset({"neg", "conj"})

FUNCTION_IDS = frozenset(CATALOGUE) | STRUCTURAL_IDS
