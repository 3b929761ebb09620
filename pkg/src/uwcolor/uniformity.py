"""CIELAB uniformity corrections.

Two small fixes for known non-uniformities of CIELAB:

* **Blue-region hue adjustment** (pre-processing).  CIELAB is not
  hue-linear around hue 275 degrees: raising chroma at fixed stored hue
  shifts the perceived hue towards purple.  The stored hue is rotated by
  up to ``mu_deg`` degrees, gated by a chroma sigmoid (engaging around
  chroma 10) and a Gaussian window centered at 275 degrees of width 25.

* **Helmholtz-Kohlrausch lightness adjustment** (post-processing).
  Saturated colors look brighter than their L* says.  The perceived
  lightness is estimated as L + (2.5 - 0.025 L) g(h) C; inverting that
  relation after chroma enhancement keeps the perceived lightness stable
  instead of over-exposing saturated regions.

Both maps are per pixel and pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .colorspace import ACHROMATIC_EPS

# Denominator floor for the Helmholtz-Kohlrausch inversion; reached only
# at chroma far beyond the sRGB gamut, but keeps the division sane.
HK_DENOM_FLOOR = 0.05


@dataclass(frozen=True)
class UniformityParams:
    """mu_deg: maximal hue rotation (degrees); m: chroma-sigmoid exponent."""

    mu_deg: float = 45.0
    m: float = 7.0

    def __post_init__(self):
        if self.mu_deg < 0:
            raise ValueError(f"mu_deg must be >= 0, got {self.mu_deg}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")


def adjust_blue_hue(lab: np.ndarray, params: UniformityParams) -> np.ndarray:
    """Rotate hues in the blue region; chroma and lightness are untouched.

    h' = h - mu * sqrt(C^m / (C^m + 10^m)) * exp(-((h - 275) / 25)^2)

    Achromatic pixels (chroma < threshold) are returned bit-identical.
    """
    lab = np.asarray(lab, dtype=np.float64)
    a = lab[..., 1]
    b = lab[..., 2]
    c = np.hypot(a, b)
    chromatic = c >= ACHROMATIC_EPS
    h = np.degrees(np.arctan2(b, a)) % 360.0
    cm = np.where(chromatic, c, 1.0) ** params.m
    sigmoid = np.sqrt(cm / (cm + 10.0 ** params.m))
    window = np.exp(-(((h - 275.0) / 25.0) ** 2))
    h_adj = np.radians(h - params.mu_deg * sigmoid * window)
    out = lab.copy()
    out[..., 1] = np.where(chromatic, c * np.cos(h_adj), a)
    out[..., 2] = np.where(chromatic, c * np.sin(h_adj), b)
    return out


def hk_g(h):
    """Hue weight of the Helmholtz-Kohlrausch estimate.

    g(h) = 0.116 |sin((h - 90) / 2)| + 0.085, half-angle in degrees;
    minimal 0.085 at yellow (90), maximal 0.201 at blue (270).
    """
    h = np.asarray(h, dtype=np.float64)
    return 0.116 * np.abs(np.sin(np.radians((h - 90.0) / 2.0))) + 0.085


def hk_perceived_lightness(L, C, h):
    """Perceived lightness including the Helmholtz-Kohlrausch boost."""
    L = np.asarray(L, dtype=np.float64)
    return L + (2.5 - 0.025 * L) * hk_g(h) * np.asarray(C, dtype=np.float64)


def hk_inverse_adjust(L_hat, C, h, return_flags: bool = False):
    """CIELAB lightness whose perceived lightness equals L_hat at (C, h).

    Inverts `hk_perceived_lightness` in L:
    L = (L_hat - 2.5 g(h) C) / (1 - 0.025 g(h) C), clamped to [0, 100].

    The denominator is floored at HK_DENOM_FLOOR; with ``return_flags``
    the mask of floored (extreme-chroma) pixels is returned for
    diagnostics.
    """
    L_hat = np.asarray(L_hat, dtype=np.float64)
    gC = hk_g(h) * np.asarray(C, dtype=np.float64)
    denom = 1.0 - 0.025 * gC
    flagged = denom < HK_DENOM_FLOOR
    denom = np.maximum(denom, HK_DENOM_FLOOR)
    out = np.clip((L_hat - 2.5 * gC) / denom, 0.0, 100.0)
    if return_flags:
        return out, flagged
    return out
