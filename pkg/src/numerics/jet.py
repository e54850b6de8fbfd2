"""
Wirtinger jets: a value carried together with both Wirtinger derivatives.

Fields may be scalars or numpy arrays of equal shape, so one AST can be
evaluated over a whole lattice at once. Points where an elementary function
was applied inside its guard radius are flagged in ``invalid`` and counted as
skips by the callers; they are never reported as values.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ..config import get_settings
from ..errors import DomainError
from .elementary import CATALOGUE, FUNCTION_IDS

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, np.ndarray]


def _as_complex(x) -> np.ndarray:
    return np.asarray(x, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class WirtingerJet:
    """(value, d/dz, d/dzbar) with a skip mask"""

    value: ComplexLike
    d_z: ComplexLike
    d_zbar: ComplexLike
    invalid: Union[bool, np.ndarray] = False
    scale: ComplexLike = 1.0  # evaluation point; sets the guard radius

    @classmethod
    def variable(cls, z: ComplexLike) -> "WirtingerJet":
        """Seed jet of the coordinate: (z, 1, 0)"""
        z = _as_complex(z)
        return cls(z, np.ones_like(z), np.zeros_like(z), np.zeros(z.shape, dtype=bool), z)

    @classmethod
    def constant(cls, c: complex, like: "WirtingerJet" = None) -> "WirtingerJet":
        shape = () if like is None else np.shape(like.value)
        scale = 1.0 if like is None else like.scale
        value = np.full(shape, complex(c), dtype=np.complex128)
        return cls(value, np.zeros(shape, dtype=np.complex128), np.zeros(shape, dtype=np.complex128),
                   np.zeros(shape, dtype=bool), scale)

    def _derive(self, value, d_z, d_zbar, invalid) -> "WirtingerJet":
        return WirtingerJet(value, d_z, d_zbar, invalid, self.scale)

    def _coerce(self, other) -> "WirtingerJet":
        return other if isinstance(other, WirtingerJet) else WirtingerJet.constant(other, like=self)

    # ---------- arithmetic ----------
    def __add__(self, other) -> "WirtingerJet":
        o = self._coerce(other)
        return self._derive(self.value + o.value, self.d_z + o.d_z, self.d_zbar + o.d_zbar,
                            self.invalid | o.invalid)

    __radd__ = __add__

    def __sub__(self, other) -> "WirtingerJet":
        o = self._coerce(other)
        return self._derive(self.value - o.value, self.d_z - o.d_z, self.d_zbar - o.d_zbar,
                            self.invalid | o.invalid)

    def __rsub__(self, other) -> "WirtingerJet":
        return self._coerce(other).__sub__(self)

    def __mul__(self, other) -> "WirtingerJet":
        o = self._coerce(other)
        return self._derive(
            self.value * o.value,
            self.value * o.d_z + o.value * self.d_z,
            self.value * o.d_zbar + o.value * self.d_zbar,
            self.invalid | o.invalid,
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> "WirtingerJet":
        o = self._coerce(other)
        return self * jet_apply("recip", o, scale=self.scale, strict=False)

    def __rtruediv__(self, other) -> "WirtingerJet":
        return self._coerce(other).__truediv__(self)

    def __neg__(self) -> "WirtingerJet":
        return self._derive(-self.value, -self.d_z, -self.d_zbar, self.invalid)

    def __pow__(self, n: int) -> "WirtingerJet":
        if not isinstance(n, (int, np.integer)):
            raise TypeError("jet powers take integer exponents; use exp(b*ln(a)) otherwise")
        return jet_power(self, int(n))

    def conj(self) -> "WirtingerJet":
        """Conjugation swaps and conjugates the derivative channels"""
        return self._derive(np.conj(self.value), np.conj(self.d_zbar), np.conj(self.d_z), self.invalid)

    # ---------- inspection ----------
    def with_mask(self, invalid) -> "WirtingerJet":
        return self._derive(self.value, self.d_z, self.d_zbar, np.asarray(self.invalid) | np.asarray(invalid))

    @property
    def any_invalid(self) -> bool:
        return bool(np.any(self.invalid))

    def with_nonfinite_flagged(self) -> "WirtingerJet":
        """Mark non-finite entries invalid and zero out every invalid entry"""
        with np.errstate(invalid="ignore"):
            finite = np.isfinite(self.value) & np.isfinite(self.d_z) & np.isfinite(self.d_zbar)
        invalid = np.asarray(self.invalid) | ~finite
        return self._derive(
            np.where(invalid, 0, self.value),
            np.where(invalid, 0, self.d_z),
            np.where(invalid, 0, self.d_zbar),
            invalid,
        )

    def scalar(self) -> "WirtingerJet":
        """Collapse 0-d fields to plain Python complex numbers"""
        return WirtingerJet(complex(self.value), complex(self.d_z), complex(self.d_zbar), bool(self.invalid),
                            complex(np.asarray(self.scale).flat[0]))

    def __repr__(self) -> str:
        return f"WirtingerJet(value={self.value!r}, d_z={self.d_z!r}, d_zbar={self.d_zbar!r})"


def guard_radius(scale: ComplexLike = 1.0) -> np.ndarray:
    """Guard radius 1e-9 * max(1, |z|) around poles and branch points"""
    return get_settings().guard_radius * np.maximum(1.0, np.abs(scale))


def jet_apply(fn: str, arg: WirtingerJet, *, scale: Optional[ComplexLike] = None,
              strict: bool = True) -> WirtingerJet:
    """
    Apply an elementary function with the chain rule on both channels.

    With ``strict`` any argument inside the guard radius raises DomainError;
    otherwise those entries are flagged invalid and evaluation continues.
    The guard radius follows ``scale``, by default the jet's own evaluation point.
    """
    if fn not in FUNCTION_IDS:
        raise ValueError(f"unknown elementary function {fn!r}")
    if fn == "neg":
        return -arg
    if fn == "conj":
        return arg.conj()

    entry = CATALOGUE[fn]
    scale = arg.scale if scale is None else scale
    value = _as_complex(arg.value)
    invalid = np.asarray(arg.invalid)
    if entry.singular_at_zero:
        bad = np.abs(value) < guard_radius(scale)
        if np.any(bad):
            if strict:
                point = complex(value) if value.ndim == 0 else complex(value[bad].flat[0])
                raise DomainError(f"{fn} evaluated within the guard radius of its singular point",
                                  point=point)
            value = np.where(bad, 1.0, value)
            invalid = invalid | bad

    with np.errstate(all="ignore"):
        fx = entry.value(value)
        dfx = entry.derivative(value, fx)
        d_z = dfx * arg.d_z
        d_zbar = dfx * arg.d_zbar
    return WirtingerJet(fx, d_z, d_zbar, invalid, arg.scale)


def jet_power(base: WirtingerJet, n: int, *, scale: Optional[ComplexLike] = None) -> WirtingerJet:
    """Integer power by repeated squaring (no exp/ln, so no branch cut)"""
    if n == 0:
        return WirtingerJet.constant(1.0, like=base).with_mask(base.invalid)
    if n < 0:
        return jet_apply("recip", jet_power(base, -n), scale=scale, strict=False)
    result = None
    square = base
    while True:
        if n & 1:
            result = square if result is None else result * square
        n >>= 1
        if not n:
            return result
        square = square * square


def real_partials(jet: WirtingerJet):
    """
    Real partials (u_x, u_y, v_x, v_y) of w = u + iv from its Wirtinger channels.

    f_x = d_z + d_zbar and f_y = i (d_z - d_zbar).
    """
    f_x = jet.d_z + jet.d_zbar
    f_y = 1j * (jet.d_z - jet.d_zbar)
    return np.real(f_x), np.real(f_y), np.imag(f_x), np.imag(f_y)
