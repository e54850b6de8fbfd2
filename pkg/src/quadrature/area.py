"""
Two-dimensional quadrature over discs and rectangles, including the weakly
singular Cauchy-Pompeiu kernel 1/(z - zeta).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import roots_legendre

from ..config import get_settings
from ..errors import ExcessiveSkipsError, InvalidGeometryError
from ..expr import Expr, evaluate, format_expr
from .base import Region
from .contour import Circle, Polygon
from .summation import weighted_sum

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 8
CHANNELS = ("value", "d_z", "d_zbar")


def _resolve_resolution(resolution) -> Tuple[int, int]:
    if resolution is None:
        n = get_settings().area_resolution
        return n, n
    if isinstance(resolution, (int, np.integer)):
        resolution = (int(resolution), int(resolution))
    first, second = (int(r) for r in resolution)
    if first < MIN_RESOLUTION or second < MIN_RESOLUTION:
        raise InvalidGeometryError(f"resolution must be at least {MIN_RESOLUTION} in each direction, got {resolution}")
    return first, second


def _gauss_on(a, b, n: int):
    """Gauss-Legendre nodes and weights mapped to [a, b] (a, b may be arrays)"""
    x, w = roots_legendre(n)
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


@dataclass(frozen=True)
class Disc(Region):
    center: complex
    radius: float
    resolution: Optional[Tuple[int, int]] = None  # (radial, angular)

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise InvalidGeometryError(f"disc radius must be positive, got {self.radius!r}")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "resolution", _resolve_resolution(self.resolution))

    def with_resolution(self, resolution) -> "Disc":
        return Disc(self.center, self.radius, resolution)

    def quadrature_nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        n_radial, n_angular = self.resolution
        r, w_r = _gauss_on(0.0, self.radius, n_radial)
        r, w_r = r.ravel(), w_r.ravel()
        theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
        points = self.center + r[:, None] * np.exp(1j * theta)[None, :]
        weights = (w_r * r)[:, None] * np.full(n_angular, 2.0 * np.pi / n_angular)[None, :]
        return points.ravel(), weights.ravel()

    def lattice(self) -> np.ndarray:
        """Center first, then rings at linspace(0, R, nr)[1:], each with n_angular points"""
        n_radial, n_angular = self.resolution
        radii = np.linspace(0.0, self.radius, n_radial)[1:]
        theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
        rings = self.center + radii[:, None] * np.exp(1j * theta)[None, :]
        return np.concatenate([[self.center], rings.ravel()])

    def cell_size(self) -> float:
        return self.radius / (self.resolution[0] - 1)

    def contains(self, z, margin: float = 0.0):
        return np.abs(np.asarray(z) - self.center) <= self.radius - margin

    def bounding_box(self) -> Tuple[complex, complex]:
        r = self.radius
        return self.center - complex(r, r), self.center + complex(r, r)

    def boundary(self) -> Circle:
        return Circle(self.center, self.radius, 1)

    def area(self) -> float:
        return np.pi * self.radius ** 2

    def describe(self) -> str:
        return f"disc:{self.center.real!r},{self.center.imag!r},{self.radius!r}"


@dataclass(frozen=True)
class Rectangle(Region):
    corner_min: complex
    corner_max: complex
    resolution: Optional[Tuple[int, int]] = None  # (nx, ny)

    def __post_init__(self):
        lo, hi = complex(self.corner_min), complex(self.corner_max)
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise InvalidGeometryError("rectangle corners must be finite")
        if not (lo.real < hi.real and lo.imag < hi.imag):
            raise InvalidGeometryError(f"corner_min {lo!r} must lie strictly below-left of corner_max {hi!r}")
        object.__setattr__(self, "corner_min", lo)
        object.__setattr__(self, "corner_max", hi)
        object.__setattr__(self, "resolution", _resolve_resolution(self.resolution))

    def with_resolution(self, resolution) -> "Rectangle":
        return Rectangle(self.corner_min, self.corner_max, resolution)

    def quadrature_nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        nx, ny = self.resolution
        x, wx = _gauss_on(self.corner_min.real, self.corner_max.real, nx)
        y, wy = _gauss_on(self.corner_min.imag, self.corner_max.imag, ny)
        x, wx, y, wy = x.ravel(), wx.ravel(), y.ravel(), wy.ravel()
        points = x[None, :] + 1j * y[:, None]
        weights = wx[None, :] * wy[:, None]
        return points.ravel(), weights.ravel()

    def lattice(self) -> np.ndarray:
        nx, ny = self.resolution
        xs = np.linspace(self.corner_min.real, self.corner_max.real, nx)
        ys = np.linspace(self.corner_min.imag, self.corner_max.imag, ny)
        return (xs[None, :] + 1j * ys[:, None]).ravel()

    def contains(self, z, margin: float = 0.0):
        z = np.asarray(z)
        return ((z.real >= self.corner_min.real + margin) & (z.real <= self.corner_max.real - margin)
                & (z.imag >= self.corner_min.imag + margin) & (z.imag <= self.corner_max.imag - margin))

    def bounding_box(self) -> Tuple[complex, complex]:
        return self.corner_min, self.corner_max

    def boundary(self) -> Polygon:
        lo, hi = self.corner_min, self.corner_max
        return Polygon((lo, complex(hi.real, lo.imag), hi, complex(lo.real, hi.imag)))

    def area(self) -> float:
        d = self.corner_max - self.corner_min
        return d.real * d.imag

    def describe(self) -> str:
        lo, hi = self.corner_min, self.corner_max
        return f"rect:{lo.real!r},{lo.imag!r},{hi.real!r},{hi.imag!r}"


@dataclass(frozen=True)
class IntegralEstimate:
    value: complex
    n_points: int
    n_skipped: int


def enforce_skip_limit(n_skipped: int, n_points: int, limit: Optional[float] = None) -> None:
    """Raise ExcessiveSkipsError when the skipped fraction exceeds the limit"""
    limit = get_settings().max_skip_fraction if limit is None else limit
    if n_skipped > limit * n_points:
        raise ExcessiveSkipsError(n_skipped, n_points, limit)
    if n_skipped:
        logger.warning("%d of %d sample points skipped (guard radius or non-finite)", n_skipped, n_points)


def channel_values(f: Expr, points: np.ndarray, channel: str = "value") -> Tuple[np.ndarray, np.ndarray]:
    """Selected jet channel of f at the points, with the skip mask"""
    if channel not in CHANNELS:
        raise ValueError(f"channel must be one of {CHANNELS}, got {channel!r}")
    jet = evaluate(f, points)
    return np.asarray(getattr(jet, channel)), np.asarray(jet.invalid, dtype=bool)


def area_integral_estimate(f: Expr, region: Region, channel: str = "value") -> IntegralEstimate:
    points, weights = region.quadrature_nodes()
    values, invalid = channel_values(f, points, channel)
    n_skipped = int(np.count_nonzero(invalid))
    enforce_skip_limit(n_skipped, points.size)
    value = weighted_sum(np.where(invalid, 0.0, values), weights)
    logger.debug("area integral of %s[%s] over %s = %r", format_expr(f), channel, region.describe(), value)
    return IntegralEstimate(value, points.size, n_skipped)


def area_integral(f: Expr, region: Region, channel: str = "value") -> complex:
    """
    Tensor-product quadrature of the integral of f dx dy: Gauss-Legendre in
    radius and trapezoid in angle on discs, Gauss-Legendre in x and y on
    rectangles. ``channel`` selects the value or a Wirtinger derivative of f.
    """
    return area_integral_estimate(f, region, channel).value


def _check_interior(disc: Disc, zeta: complex) -> None:
    margin = 1e-6 * disc.radius
    if not abs(zeta - disc.center) < disc.radius - margin:
        raise InvalidGeometryError(
            f"zeta = {zeta!r} must lie strictly inside {disc.describe()} (margin {margin:.3g})"
        )


def polar_nodes_about(disc: Disc, zeta: complex) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Polar quadrature centered at zeta: per angle, Gauss-Legendre in rho over
    [0, rho_max(theta)] where rho_max solves |zeta - c + rho e^(i theta)| = R.

    Returns points, the kernel factor e^(-i theta), and the weights d(rho) d(theta).
    """
    n_radial, n_angular = disc.resolution
    theta = 2.0 * np.pi * np.arange(n_angular) / n_angular
    direction = np.exp(1j * theta)
    d = zeta - disc.center
    b = (np.conj(d) * direction).real
    rho_max = -b + np.sqrt(b * b + disc.radius ** 2 - abs(d) ** 2)
    rho, w_rho = _gauss_on(np.zeros(n_angular), rho_max, n_radial)  # shape (n_angular, n_radial)
    points = zeta + rho * direction[:, None]
    kernel = np.broadcast_to(np.conj(direction)[:, None], points.shape)
    weights = w_rho * (2.0 * np.pi / n_angular)
    return points.ravel(), np.asarray(kernel).ravel(), weights.ravel()


def singular_area_integral_estimate(f: Expr, disc: Disc, zeta: complex, channel: str = "value") -> IntegralEstimate:
    if not isinstance(disc, Disc):
        raise InvalidGeometryError("the singular kernel is only supported on discs")
    zeta = complex(zeta)
    _check_interior(disc, zeta)
    points, kernel, weights = polar_nodes_about(disc, zeta)
    values, invalid = channel_values(f, points, channel)
    n_skipped = int(np.count_nonzero(invalid))
    enforce_skip_limit(n_skipped, points.size)
    value = weighted_sum(np.where(invalid, 0.0, values) * kernel, weights)
    return IntegralEstimate(value, points.size, n_skipped)


def singular_area_integral(f: Expr, disc: Disc, zeta: complex, channel: str = "value") -> complex:
    """
    Integral of f(z) / (z - zeta) over the disc, in polar coordinates about
    zeta so the Jacobian rho cancels the 1/|z - zeta| singularity.
    """
    return singular_area_integral_estimate(f, disc, zeta, channel).value


def parse_resolution(text: Optional[str]) -> Optional[Tuple[int, int]]:
    """"N" or "N,M" -> (N, M)"""
    if text is None:
        return None
    try:
        parts = [int(p) for p in str(text).split(",")]
    except ValueError as e:
        raise InvalidGeometryError(f"malformed resolution {text!r}") from e
    if len(parts) == 1:
        parts *= 2
    if len(parts) != 2:
        raise InvalidGeometryError(f"resolution takes N or N,M: {text!r}")
    return _resolve_resolution(parts)


def parse_region(text: str, resolution: Union[None, str, Sequence[int]] = None) -> Region:
    """Region string syntax: "disc:cx,cy,r" or "rect:x0,y0,x1,y1"."""
    if isinstance(resolution, str):
        resolution = parse_resolution(resolution)
    kind, _, body = text.strip().partition(":")
    try:
        values = [float(p) for p in body.split(",")]
    except ValueError as e:
        raise InvalidGeometryError(f"malformed region {text!r}") from e
    kind = kind.lower()
    if kind == "disc":
        if len(values) != 3:
            raise InvalidGeometryError(f"disc needs cx,cy,r: {text!r}")
        return Disc(complex(values[0], values[1]), values[2], resolution)
    if kind == "rect":
        if len(values) != 4:
            raise InvalidGeometryError(f"rect needs x0,y0,x1,y1: {text!r}")
        return Rectangle(complex(values[0], values[1]), complex(values[2], values[3]), resolution)
    raise InvalidGeometryError(f"unknown region kind {kind!r} (use disc:... or rect:...)")
