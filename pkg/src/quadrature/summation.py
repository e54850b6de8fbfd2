"""Deterministic compensated accumulation"""

import math
from typing import Iterable
import numpy as np


def compensated_sum(values: Iterable[complex]) -> complex:
    """
    Correctly rounded sum of complex terms (real and imaginary parts via fsum).

    The result does not depend on how the terms were produced, so vectorized
    or parallel node evaluation cannot change it.
    """
    values = np.asarray(values, dtype=np.complex128).ravel()
    return complex(math.fsum(values.real.tolist()), math.fsum(values.imag.tolist()))


def weighted_sum(values: np.ndarray, weights: np.ndarray) -> complex:
    return compensated_sum(np.asarray(values) * np.asarray(weights))
