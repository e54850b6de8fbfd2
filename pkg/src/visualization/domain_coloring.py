"""
Domain coloring: hue follows arg f, lightness follows |f| on a logarithmic
ramp, non-evaluable pixels are black. Written as binary PPM (P6).
"""

import logging
from pathlib import Path
from typing import Sequence, Tuple, Union

import numpy as np
from matplotlib.colors import hsv_to_rgb
from PIL import Image

from ..errors import InvalidGeometryError
from ..expr import Expr, evaluate_values, format_expr, parse

logger = logging.getLogger(__name__)

MIN_PIXELS = 16
LIGHTNESS_RANGE = (0.05, 0.95)


def _check(window: Sequence[float], pixels: Sequence[int]) -> Tuple[Tuple[float, float, float, float], Tuple[int, int]]:
    if len(window) != 4 or len(pixels) != 2:
        raise InvalidGeometryError("window takes x0,y0,x1,y1 and pixels takes W,H")
    x0, y0, x1, y1 = (float(v) for v in window)
    width, height = (int(p) for p in pixels)
    if not all(np.isfinite([x0, y0, x1, y1])) or not (x1 > x0 and y1 > y0):
        raise InvalidGeometryError(f"degenerate window {tuple(window)!r}")
    if width < MIN_PIXELS or height < MIN_PIXELS:
        raise InvalidGeometryError(f"image must be at least {MIN_PIXELS}x{MIN_PIXELS}, got {width}x{height}")
    return (x0, y0, x1, y1), (width, height)


def pixel_centers(window: Sequence[float], pixels: Sequence[int]) -> np.ndarray:
    """(H, W) array of pixel-center coordinates, rows from the top edge down"""
    (x0, y0, x1, y1), (width, height) = _check(window, pixels)
    xs = x0 + (x1 - x0) * (np.arange(width) + 0.5) / width
    ys = y1 - (y1 - y0) * (np.arange(height) + 0.5) / height
    return xs[None, :] + 1j * ys[:, None]


def lightness(modulus: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        ramp = 0.5 + np.arctan(np.log(modulus)) / np.pi
    return np.clip(ramp, *LIGHTNESS_RANGE)


def colorize(values: np.ndarray, invalid: np.ndarray) -> np.ndarray:
    """Complex values to 8-bit RGB; full-saturation HSL mapped through HSV"""
    hue = np.mod(np.angle(values) / (2.0 * np.pi), 1.0)
    light = lightness(np.abs(values))
    value = light + np.minimum(light, 1.0 - light)
    saturation = 2.0 * (1.0 - light / value)
    rgb = hsv_to_rgb(np.stack([hue, saturation, value], axis=-1))
    rgb = np.round(rgb * 255.0).astype(np.uint8)
    rgb[invalid] = 0
    return rgb


def domain_coloring_rgb(f: Union[Expr, str], window: Sequence[float], pixels: Sequence[int]) -> Tuple[np.ndarray, np.ndarray]:
    """(H, W, 3) uint8 image and the (H, W) mask of non-evaluable pixels"""
    f = parse(f) if isinstance(f, str) else f
    z = pixel_centers(window, pixels)
    values, invalid = evaluate_values(f, z)
    values = np.broadcast_to(values, z.shape)
    invalid = np.broadcast_to(invalid, z.shape) | ~np.isfinite(values)
    rgb = colorize(np.where(invalid, 1.0, values), invalid)
    if invalid.any():
        logger.info("%s: %d black pixels", format_expr(f), int(np.count_nonzero(invalid)))
    return rgb, invalid


def render_domain_coloring(f: Union[Expr, str], window: Sequence[float], pixels: Sequence[int],
                           out: Union[str, Path]) -> Path:
    """Write the domain coloring of f as a binary PPM (P6), or PNG when ``out`` ends in .png"""
    rgb, _ = domain_coloring_rgb(f, window, pixels)
    return save_image(rgb, out)


def save_image(rgb: np.ndarray, out: Union[str, Path]) -> Path:
    """Binary PPM (P6), or PNG when the suffix is .png"""
    out = Path(out)
    fmt = "PNG" if out.suffix.lower() == ".png" else "PPM"
    Image.fromarray(rgb).save(out, format=fmt)
    logger.info("wrote %s (%dx%d)", out, rgb.shape[1], rgb.shape[0])
    return out
