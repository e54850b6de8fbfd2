"""
Closed contours and line integrals.

Circles use the equispaced periodic trapezoid rule, which is spectrally
accurate for smooth periodic integrands; polygons use Gauss-Legendre per edge;
parametric curves carry their own equispaced samples and are resampled by
Fourier interpolation. Orientation -1 keeps the node set and negates the
measure, so reversing a contour negates every integral exactly.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.signal import resample
from scipy.special import roots_legendre

from ..config import get_settings
from ..errors import EvaluationError, InvalidGeometryError
from ..expr import Expr, evaluate_values, format_expr
from ..numerics.jet import guard_radius
from .base import Contour
from .summation import compensated_sum, weighted_sum

logger = logging.getLogger(__name__)

MIN_NODES = 8


class PointOnContourError(InvalidGeometryError):
    def __init__(self, z: complex, distance: float):
        self.point = z
        self.distance = distance
        super().__init__(f"point {z!r} lies on the contour (distance {distance:.3g})")


def _check_orientation(orientation: int) -> int:
    if orientation not in (1, -1):
        raise InvalidGeometryError(f"orientation must be +1 or -1, got {orientation!r}")
    return orientation


@dataclass(frozen=True)
class Circle(Contour):
    center: complex
    radius: float
    orientation: int = 1

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise InvalidGeometryError(f"circle radius must be positive, got {self.radius!r}")
        if not np.isfinite(complex(self.center)):
            raise InvalidGeometryError("circle center must be finite")
        _check_orientation(self.orientation)

    def sample(self, n: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        n = get_settings().circle_nodes if n is None else int(n)
        if n < 1:
            raise InvalidGeometryError(f"node count must be positive, got {n}")
        theta = 2.0 * np.pi * np.arange(n) / n
        unit = np.exp(1j * theta)
        nodes = complex(self.center) + self.radius * unit
        dz = self.orientation * 1j * self.radius * unit * (2.0 * np.pi / n)
        return nodes, dz

    def reversed(self) -> "Circle":
        return Circle(self.center, self.radius, -self.orientation)

    def distance_to(self, z: complex) -> float:
        return abs(abs(complex(z) - complex(self.center)) - self.radius)

    def describe(self) -> str:
        c = complex(self.center)
        text = f"circle:{c.real!r},{c.imag!r},{self.radius!r}"
        return text + (",cw" if self.orientation < 0 else "")


@dataclass(frozen=True)
class Polygon(Contour):
    """Closed polygon; the last edge returns to the first vertex"""

    vertices: Tuple[complex, ...]
    orientation: int = 1

    def __post_init__(self):
        verts = [complex(v) for v in self.vertices]
        if len(verts) > 1 and verts[0] == verts[-1]:
            verts = verts[:-1]
        cleaned = [v for i, v in enumerate(verts) if i == 0 or v != verts[i - 1]]
        if len(set(cleaned)) < 3:
            raise InvalidGeometryError("polygon needs at least 3 distinct vertices to close")
        if not all(np.isfinite(v) for v in cleaned):
            raise InvalidGeometryError("polygon vertices must be finite")
        object.__setattr__(self, "vertices", tuple(cleaned))
        _check_orientation(self.orientation)

    def edges(self):
        v = self.vertices
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def sample(self, n: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        n = get_settings().edge_nodes if n is None else int(n)
        if n < 1:
            raise InvalidGeometryError(f"node count must be positive, got {n}")
        x, w = roots_legendre(n)
        nodes, dz = [], []
        for a, b in self.edges():
            half = 0.5 * (b - a)
            nodes.append(a + half * (x + 1.0))
            dz.append(self.orientation * half * w)
        return np.concatenate(nodes), np.concatenate(dz).astype(np.complex128)

    def reversed(self) -> "Polygon":
        return Polygon(self.vertices, -self.orientation)

    def distance_to(self, z: complex) -> float:
        z = complex(z)
        best = np.inf
        for a, b in self.edges():
            ab = b - a
            t = np.clip(((z - a) * np.conj(ab)).real / abs(ab) ** 2, 0.0, 1.0)
            best = min(best, abs(z - (a + t * ab)))
        return float(best)

    def describe(self) -> str:
        text = "poly:" + ";".join(f"{v.real!r},{v.imag!r}" for v in self.vertices)
        return text + (";cw" if self.orientation < 0 else "")


@dataclass(frozen=True, eq=False)
class Parametric(Contour):
    """
    One period of a smooth closed curve given by equispaced samples of the
    point and its parameter derivative.
    """

    points: np.ndarray
    derivatives: np.ndarray
    period: float = 2.0 * np.pi
    orientation: int = 1

    def __post_init__(self):
        points = np.asarray(self.points, dtype=np.complex128).ravel()
        derivatives = np.asarray(self.derivatives, dtype=np.complex128).ravel()
        if points.size < MIN_NODES:
            raise InvalidGeometryError(f"parametric contour needs at least {MIN_NODES} nodes")
        if points.shape != derivatives.shape:
            raise InvalidGeometryError("points and derivatives must have the same length")
        if not (np.all(np.isfinite(points)) and np.all(np.isfinite(derivatives))):
            raise InvalidGeometryError("parametric samples must be finite")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "derivatives", derivatives)
        _check_orientation(self.orientation)

    @classmethod
    def from_callables(cls, gamma: Callable, dgamma: Callable, n: int, period: float = 2.0 * np.pi) -> "Parametric":
        t = period * np.arange(n) / n
        return cls(np.asarray(gamma(t)), np.asarray(dgamma(t)), period)

    def sample(self, n: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        points, derivatives = self.points, self.derivatives
        if n is not None and int(n) != points.size:
            n = int(n)
            points = resample(points, n)
            derivatives = resample(derivatives, n)
        return points.copy(), self.orientation * derivatives * (self.period / points.size)

    def reversed(self) -> "Parametric":
        return Parametric(self.points, self.derivatives, self.period, -self.orientation)

    def distance_to(self, z: complex) -> float:
        dense = resample(self.points, max(4 * self.points.size, 1024))
        return float(np.min(np.abs(dense - complex(z))))

    def describe(self) -> str:
        return f"parametric:{self.points.size} nodes"


def sample_contour(c: Contour, n: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes and weight*dz elements; their sum realizes the integral of dz"""
    return c.sample(n)


def values_on_nodes(f: Expr, nodes: np.ndarray) -> np.ndarray:
    """Evaluate f at contour nodes; line integrals cannot skip a node"""
    values, invalid = evaluate_values(f, nodes)
    if np.any(invalid):
        bad = complex(nodes[np.argmax(invalid)])
        raise EvaluationError(f"{format_expr(f)} is not evaluable on the contour", point=bad)
    return values


def line_integral(f: Expr, c: Contour, n: Optional[int] = None) -> complex:
    """Quadrature value of the closed line integral of f dz"""
    nodes, dz = c.sample(n)
    value = weighted_sum(values_on_nodes(f, nodes), dz)
    logger.debug("line integral of %s over %s with %d nodes = %r", format_expr(f), c.describe(), nodes.size, value)
    return value


def winding_number_detail(c: Contour, z: complex, n: Optional[int] = None) -> Tuple[int, float]:
    """
    Nearest integer to (1/2 pi i) times the integral of d(zeta)/(zeta - z), with
    its residual distance from that integer. Nodes are doubled until the
    residual settles for points close to the curve.
    """
    z = complex(z)
    distance = c.distance_to(z)
    if distance <= float(guard_radius(z)):
        raise PointOnContourError(z, distance)
    count = n
    while True:
        nodes, dz = c.sample(count)
        index = weighted_sum(1.0 / (nodes - z), dz) / (2j * np.pi)
        number = int(round(index.real))
        residual = abs(index - number)
        if residual < 1e-6 or nodes.size >= 1 << 16 or isinstance(c, Parametric):
            return number, float(residual)
        count = 2 * (count if count is not None else _default_nodes(c))


def winding_number(c: Contour, z: complex, n: Optional[int] = None) -> int:
    number, residual = winding_number_detail(c, z, n)
    if residual > 1e-3:
        logger.warning("winding number of %r about %s has residual %.3g", z, c.describe(), residual)
    return number


def _floats(text: str, what: str) -> Sequence[float]:
    try:
        return [float(part) for part in text.split(",")]
    except ValueError as e:
        raise InvalidGeometryError(f"malformed {what}: {text!r}") from e


def parse_contour(text: str) -> Contour:
    """
    Contour string syntax: "circle:cx,cy,r[,cw]" or "poly:x1,y1;x2,y2;...[;cw]".
    """
    kind, _, body = text.strip().partition(":")
    kind = kind.lower()
    if kind == "circle":
        parts = [p.strip() for p in body.split(",")]
        orientation = 1
        if parts and parts[-1].lower() in ("cw", "ccw"):
            orientation = -1 if parts.pop().lower() == "cw" else 1
        values = _floats(",".join(parts), "circle")
        if len(values) != 3:
            raise InvalidGeometryError(f"circle needs cx,cy,r: {text!r}")
        return Circle(complex(values[0], values[1]), values[2], orientation)
    if kind == "poly":
        items = [p.strip() for p in body.split(";") if p.strip()]
        orientation = 1
        if items and items[-1].lower() in ("cw", "ccw"):
            orientation = -1 if items.pop().lower() == "cw" else 1
        vertices = []
        for item in items:
            xy = _floats(item, "polygon vertex")
            if len(xy) != 2:
                raise InvalidGeometryError(f"polygon vertex needs x,y: {item!r}")
            vertices.append(complex(xy[0], xy[1]))
        return Polygon(tuple(vertices), orientation)
    raise InvalidGeometryError(f"unknown contour kind {kind!r} (use circle:... or poly:...)")


def measure_total(c: Contour, n: Optional[int] = None) -> complex:
    """Sum of the measure elements; zero for any closed contour"""
    return compensated_sum(c.sample(n)[1])


def _default_nodes(c: Contour) -> int:
    settings = get_settings()
    return settings.edge_nodes if isinstance(c, Polygon) else settings.circle_nodes
