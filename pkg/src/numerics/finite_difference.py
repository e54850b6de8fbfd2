"""Central-difference oracle for both Wirtinger derivatives"""

from typing import Callable, Optional, Tuple
import logging
import numpy as np

from ..errors import EvaluationError, WorkbenchError

logger = logging.getLogger(__name__)

EPS_CUBE_ROOT = np.finfo(float).eps ** (1.0 / 3.0)


def default_step(z: complex) -> float:
    """h = eps^(1/3) * max(1, |z|)"""
    return EPS_CUBE_ROOT * max(1.0, abs(z))


def fd_wirtinger(f: Callable[[complex], complex], z: complex, h: Optional[float] = None) -> Tuple[complex, complex]:
    """
    Estimate (d/dz, d/dzbar) of f at z from the four-point stencil z +- h, z +- ih.

    d/dz = (f_x - i f_y) / 2 and d/dzbar = (f_x + i f_y) / 2, each with O(h^2) error.
    """
    z = complex(z)
    if h is None:
        h = default_step(z)
    if not h > 0:
        raise ValueError(f"finite-difference step must be positive, got {h}")

    samples = {}
    for offset in (h, -h, 1j * h, -1j * h):
        point = z + offset
        try:
            value = complex(f(point))
        except WorkbenchError as e:
            raise EvaluationError(f"stencil evaluation failed ({e})", point=point) from e
        if not np.isfinite(value):
            raise EvaluationError("non-finite stencil value", point=point)
        samples[offset] = value

    f_x = (samples[h] - samples[-h]) / (2.0 * h)
    f_y = (samples[1j * h] - samples[-1j * h]) / (2.0 * h)
    return 0.5 * (f_x - 1j * f_y), 0.5 * (f_x + 1j * f_y)
