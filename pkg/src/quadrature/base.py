from abc import ABC, abstractmethod
from typing import Optional, Tuple
import numpy as np


class Contour(ABC):
    """Base class for closed integration curves"""

    orientation: int = 1

    @abstractmethod
    def sample(self, n: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
        """Quadrature nodes and complex measure elements (weight * dz)"""
        pass

    @abstractmethod
    def reversed(self) -> "Contour":
        """Same curve traversed the other way"""
        pass

    @abstractmethod
    def distance_to(self, z: complex) -> float:
        """Distance from z to the curve"""
        pass

    @abstractmethod
    def describe(self) -> str:
        """Contour string syntax understood by parse_contour"""
        pass


class Region(ABC):
    """Base class for two-dimensional integration regions"""

    resolution: Tuple[int, int]

    @abstractmethod
    def quadrature_nodes(self) -> Tuple[np.ndarray, np.ndarray]:
        """Tensor-product nodes and real area weights"""
        pass

    @abstractmethod
    def lattice(self) -> np.ndarray:
        """Pointwise sample lattice (boundary included)"""
        pass

    @abstractmethod
    def contains(self, z, margin: float = 0.0):
        pass

    @abstractmethod
    def bounding_box(self) -> Tuple[complex, complex]:
        pass

    @abstractmethod
    def describe(self) -> str:
        pass

    def probe_centers(self, count: int, margin: float) -> np.ndarray:
        """Up to ``count`` lattice centers lying at least ``margin`` inside the region"""
        lo, hi = self.bounding_box()
        m = max(1, int(np.ceil(np.sqrt(count))))
        centers = np.empty(0, dtype=np.complex128)
        for _ in range(64):
            xs = np.linspace(lo.real + margin, hi.real - margin, m)
            ys = np.linspace(lo.imag + margin, hi.imag - margin, m)
            grid = (xs[None, :] + 1j * ys[:, None]).ravel()
            centers = grid[self.contains(grid, margin)]
            if centers.size >= count:
                break
            m += 1
        return centers[:count]
