"""CIELAB colorimetry: sRGB conversions and the basic color primitives.

Images follow two array conventions used throughout the package:

* **RGB image** -- ``uint8`` array of shape ``(H, W, 3)``, interleaved
  R, G, B in [0, 255] (8-bit sRGB).
* **Lab image** -- ``float64`` array of shape ``(H, W, 3)`` holding the
  L*, a*, b* planes.  L* lies in [0, 100]; a*, b* are unbounded.

A single color is any length-3 array-like ``(L, a, b)``.

Conversion goes through linear RGB and CIE XYZ under the D65 reference
white (2 degree observer).  The reference white is taken as the row sums
of the RGB->XYZ matrix so that neutral grays map to a* = b* = 0 exactly
and (255, 255, 255) maps to L* = 100 exactly.

All functions here are pure; images may be shared read-only across
threads, and per-pixel maps are safe to parallelize by row.
"""

from __future__ import annotations

import numpy as np

# sRGB -> XYZ matrix, D65 illuminant, sRGB primaries.
# From http://www.brucelindbloom.com/index.html?Eqn_RGB_XYZ_Matrix.html
_M_RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
], dtype=np.float64)

# Reference white = image of (1,1,1): exact row sums, so grays are exactly
# neutral after conversion.  Numerically this is D65 (0.95047, 1.0, 1.08906).
_WHITE = _M_RGB_TO_XYZ.sum(axis=1)

# Inverse matrix via the adjugate: deterministic plain-float arithmetic
# (no LAPACK), and consistent with the forward matrix to ~1e-16.
def _inv3(m: np.ndarray) -> np.ndarray:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    adj = np.array([
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ], dtype=np.float64)
    return adj / det


_M_XYZ_TO_RGB = _inv3(_M_RGB_TO_XYZ)

# CIELAB f-function thresholds, exact rationals with delta = 6/29.
_DELTA = 6.0 / 29.0
_DELTA2 = _DELTA * _DELTA
_DELTA3 = _DELTA * _DELTA * _DELTA

#: Chroma below this is treated as achromatic: the hue angle is undefined.
ACHROMATIC_EPS = 1e-4


def _srgb_eotf(u: np.ndarray) -> np.ndarray:
    """Decode sRGB-encoded values in [0, 1] to linear light."""
    return np.where(u <= 0.04045, u / 12.92, ((u + 0.055) / 1.055) ** 2.4)


def _srgb_oetf(v: np.ndarray) -> np.ndarray:
    """Encode linear light in [0, 1] to sRGB."""
    return np.where(v <= 0.0031308, 12.92 * v, 1.055 * v ** (1.0 / 2.4) - 0.055)


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA3, np.cbrt(t), t / (3.0 * _DELTA2) + 4.0 / 29.0)


def _lab_f_inv(ft: np.ndarray) -> np.ndarray:
    return np.where(ft > _DELTA, ft ** 3, 3.0 * _DELTA2 * (ft - 4.0 / 29.0))


def srgb_unit_to_lab(rgb: np.ndarray) -> np.ndarray:
    """Convert sRGB-encoded values in [0, 1] (shape (..., 3)) to CIELAB."""
    rgb = np.asarray(rgb, dtype=np.float64)
    if rgb.shape[-1] != 3:
        raise ValueError(f"expected trailing dimension 3, got shape {rgb.shape}")
    lin = _srgb_eotf(rgb)
    xyz = lin @ _M_RGB_TO_XYZ.T
    f = _lab_f(xyz / _WHITE)
    lab = np.empty(rgb.shape, dtype=np.float64)
    lab[..., 0] = np.clip(116.0 * f[..., 1] - 16.0, 0.0, 100.0)
    lab[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    lab[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return lab


def srgb_to_lab(img: np.ndarray) -> np.ndarray:
    """Convert an 8-bit sRGB image (or color stack) to CIELAB.

    Args:
        img: uint8 array of shape (..., 3).

    Returns:
        float64 array of the same shape holding (L*, a*, b*), D65 white.
        L* is clipped into [0, 100] (roundoff can overshoot by ~4e-6).
    """
    img = np.asarray(img)
    if img.shape[-1] != 3:
        raise ValueError(f"expected trailing dimension 3, got shape {img.shape}")
    if img.dtype != np.uint8:
        raise ValueError(f"expected uint8 sRGB data, got dtype {img.dtype}")
    return srgb_unit_to_lab(img.astype(np.float64) / 255.0)


def lab_to_srgb(lab: np.ndarray) -> np.ndarray:
    """Convert a CIELAB image (or color stack) back to 8-bit sRGB.

    Out-of-gamut linear RGB components are clamped to [0, 1] before
    encoding, so every Lab input maps to a valid pixel.

    Args:
        lab: float array of shape (..., 3).

    Returns:
        uint8 array of the same shape.
    """
    lab = np.asarray(lab, dtype=np.float64)
    if lab.shape[-1] != 3:
        raise ValueError(f"expected trailing dimension 3, got shape {lab.shape}")
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    xyz = np.stack([_lab_f_inv(fx), _lab_f_inv(fy), _lab_f_inv(fz)], axis=-1)
    xyz *= _WHITE
    lin = np.clip(xyz @ _M_XYZ_TO_RGB.T, 0.0, 1.0)
    enc = _srgb_oetf(lin)
    return np.rint(enc * 255.0).astype(np.uint8)


def chroma(a, b):
    """Chroma C* = sqrt(a*^2 + b*^2), the radial distance in the a*-b* plane."""
    return np.hypot(a, b)


def hue_angle(a, b):
    """Hue angle in degrees, wrapped to [0, 360).

    For achromatic inputs (chroma below :data:`ACHROMATIC_EPS`) the hue is
    undefined and NaN is returned as the sentinel.
    """
    c = np.hypot(a, b)
    h = np.degrees(np.arctan2(b, a)) % 360.0
    return np.where(c < ACHROMATIC_EPS, np.nan, h)


def delta_e(c1, c2):
    """CIELAB color difference: Euclidean distance between two colors.

    Accepts length-3 colors or (..., 3) stacks.
    """
    d = np.asarray(c1, dtype=np.float64) - np.asarray(c2, dtype=np.float64)
    return np.sqrt(np.sum(d * d, axis=-1))


def complement(c):
    """Complementary color (100 - L*, -a*, -b*).

    Mixing a color with its complement neutralizes it: the midpoint of the
    pair is mid-gray (50, 0, 0).  Involution: complement(complement(c)) == c.
    """
    c = np.asarray(c, dtype=np.float64)
    out = np.empty_like(c)
    out[..., 0] = 100.0 - c[..., 0]
    out[..., 1] = -c[..., 1]
    out[..., 2] = -c[..., 2]
    return out


def check_rgb_image(img: np.ndarray) -> np.ndarray:
    """Validate the RGB image convention; returns the array unchanged."""
    img = np.asarray(img)
    if img.ndim != 3 or img.shape[2] != 3:
        raise ValueError(f"RGB image must have shape (H, W, 3), got {img.shape}")
    if img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError("image must be at least 1x1")
    if img.dtype != np.uint8:
        raise ValueError(f"RGB image must be uint8, got {img.dtype}")
    return img


def check_lab_image(lab: np.ndarray) -> np.ndarray:
    """Validate the Lab image convention; returns the array unchanged."""
    lab = np.asarray(lab)
    if lab.ndim != 3 or lab.shape[2] != 3:
        raise ValueError(f"Lab image must have shape (H, W, 3), got {lab.shape}")
    if not np.isfinite(lab).all():
        raise ValueError("Lab image contains non-finite values")
    return lab
