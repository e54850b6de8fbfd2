"""Input coercion shared by the engines: expression text, point sets, masked statistics"""

from typing import Sequence, Tuple, Union

import numpy as np

from ..expr import Expr, evaluate, parse
from ..numerics.jet import WirtingerJet
from ..quadrature.area import enforce_skip_limit
from ..quadrature.base import Region

ExprLike = Union[Expr, str]
PointsLike = Union[Region, Sequence[complex], np.ndarray]


def as_expr(e: ExprLike) -> Expr:
    return parse(e) if isinstance(e, (str, bytes)) else e


def as_points(points: PointsLike) -> np.ndarray:
    """Lattice of a region, or the given points as a flat complex array"""
    if isinstance(points, Region):
        return points.lattice()
    return np.atleast_1d(np.asarray(points, dtype=np.complex128)).ravel()


def describe_points(points: PointsLike) -> str:
    if isinstance(points, Region):
        return points.describe()
    return f"{as_points(points).size} points"


def joint_jets(exprs: Sequence[Expr], points: np.ndarray) -> Tuple[Sequence[WirtingerJet], np.ndarray, int]:
    """
    Jets of several expressions on the same points with the union skip mask.

    Raises ExcessiveSkipsError when too many points are skipped.
    """
    jets = [evaluate(e, points) for e in exprs]
    invalid = np.zeros(points.shape, dtype=bool)
    for jet in jets:
        invalid |= np.broadcast_to(np.asarray(jet.invalid, dtype=bool), points.shape)
    n_skipped = int(np.count_nonzero(invalid))
    enforce_skip_limit(n_skipped, points.size)
    return jets, invalid, n_skipped


def channel(jet: WirtingerJet, name: str, shape) -> np.ndarray:
    return np.broadcast_to(np.asarray(getattr(jet, name), dtype=np.complex128), shape)


def abs_stats(residual: np.ndarray, invalid: np.ndarray) -> Tuple[float, float]:
    """(max |r|, mean |r|) over the valid points; nan when none are valid"""
    magnitudes = np.abs(residual[~invalid])
    if magnitudes.size == 0:
        return float("nan"), float("nan")
    return float(magnitudes.max()), float(magnitudes.mean())


def spread(values: np.ndarray) -> float:
    """max |v - mean(v)|, zero for an empty set"""
    if values.size == 0:
        return 0.0
    return float(np.max(np.abs(values - values.mean())))
