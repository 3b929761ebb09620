"""Hue-preserving enhancement of the adapted lightness and chroma.

After adaptation the image is correct but washed out, so lightness is
stretched and chroma is boosted -- always radially in the a*-b* plane, so
hues never move.  Chroma operations are phrased as fractions of the
maximal in-gamut chroma at the pixel's (lightness, hue), which keeps
every step inside the gamut by construction:

* ``rescale_chroma``     -- keep the *percentage* of maximal chroma when
  the lightness changes from its adapted to its stretched value.
* ``gamma_enhance_chroma`` -- gamma-correct that percentage with exponent
  1/eta (eta >= 1; identity at eta = 1).
* ``robust_factor``      -- scale chroma by (theta/180)^beta where theta
  is the hue difference between the pixel and the estimated cast, so
  cast-colored pixels stay muted while divergent colors get emphasized.

All operations are per pixel, pure, and accept scalars or arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .colorspace import ACHROMATIC_EPS
from .gamut import GamutTable, max_chroma


@dataclass(frozen=True)
class EnhanceParams:
    """Enhancement knobs.

    eta:  chroma gamma (>= 1); larger boosts saturation harder.
    beta: robust-factor exponent in (0, 1]; smaller weakens suppression.
    stretch_lo/hi: input percentiles for the lightness stretch.
    stretch_target_lo/hi: lightness values the percentiles map to.
    """

    eta: float = 10.0
    beta: float = 0.25
    stretch_lo: float = 1.0
    stretch_hi: float = 99.0
    stretch_target_lo: float = 5.0
    stretch_target_hi: float = 95.0

    def __post_init__(self):
        if self.eta < 1:
            raise ValueError(f"eta must be >= 1, got {self.eta}")
        if not 0 < self.beta <= 1:
            raise ValueError(f"beta must be in (0, 1], got {self.beta}")
        if not 0 <= self.stretch_lo < self.stretch_hi <= 100:
            raise ValueError("need 0 <= stretch_lo < stretch_hi <= 100")


def stretch_lightness(L: np.ndarray, params: EnhanceParams) -> np.ndarray:
    """Percentile-based affine stretch of a lightness plane.

    The stretch_lo/stretch_hi percentiles map onto the target lightness
    values; output is clamped to [0, 100].  A degenerate plane (percentile
    span below 1e-6) is returned unchanged.
    """
    L = np.asarray(L, dtype=np.float64)
    lo_v, hi_v = np.percentile(L, [params.stretch_lo, params.stretch_hi])
    span = hi_v - lo_v
    if span < 1e-6:
        return L.copy()
    gain = (params.stretch_target_hi - params.stretch_target_lo) / span
    return np.clip((L - lo_v) * gain + params.stretch_target_lo, 0.0, 100.0)


def rescale_chroma(C_adapt, L_adapt, L_hat, h, table: GamutTable):
    """Carry the percentage of maximal chroma from L_adapt to L_hat.

    C1 = (C_adapt / Cmax(L_adapt, h)) * Cmax(L_hat, h), with the ratio
    clamped to [0, 1].  Pixels on a degenerate slice (Cmax = 0) and
    achromatic pixels (chroma below the hue-defined threshold) yield 0.
    """
    C_adapt = np.asarray(C_adapt, dtype=np.float64)
    cmax_src = max_chroma(table, L_adapt, h)
    cmax_dst = max_chroma(table, L_hat, h)
    ratio = np.zeros_like(C_adapt)
    np.divide(C_adapt, cmax_src, out=ratio, where=np.asarray(cmax_src) > 0)
    ratio = np.clip(ratio, 0.0, 1.0)
    defined = C_adapt >= ACHROMATIC_EPS
    return np.where(defined, ratio * cmax_dst, 0.0)


def gamma_enhance_chroma(C1, L_hat, h, eta: float, table: GamutTable):
    """Gamma-correct the relative saturation: C2 = (C1/Cmax)^(1/eta) * Cmax."""
    if eta < 1:
        raise ValueError(f"eta must be >= 1, got {eta}")
    C1 = np.asarray(C1, dtype=np.float64)
    cmax = max_chroma(table, L_hat, h)
    ratio = np.zeros_like(C1)
    np.divide(C1, cmax, out=ratio, where=np.asarray(cmax) > 0)
    ratio = np.clip(ratio, 0.0, 1.0)
    return ratio ** (1.0 / eta) * cmax


def hue_difference(a0, b0, ac, bc):
    """Angle in degrees [0, 180] between two chroma vectors.

    Used for the pixel-vs-cast hue difference.  Degenerate conventions:
    a cast below the achromatic threshold has no meaningful direction, so
    the difference reports 180 (no suppression); an achromatic pixel
    against a chromatic cast reports 0 (the pixel stays muted).
    """
    a0 = np.asarray(a0, dtype=np.float64)
    b0 = np.asarray(b0, dtype=np.float64)
    ac = np.asarray(ac, dtype=np.float64)
    bc = np.asarray(bc, dtype=np.float64)
    n0 = np.hypot(a0, b0)
    nc = np.hypot(ac, bc)
    ok = (n0 >= ACHROMATIC_EPS) & (nc >= ACHROMATIC_EPS)
    denom = np.where(ok, n0 * nc, 1.0)
    cosang = np.clip((a0 * ac + b0 * bc) / denom, -1.0, 1.0)
    theta = np.degrees(np.arccos(cosang))
    theta = np.where(nc < ACHROMATIC_EPS, 180.0, theta)
    return np.where((nc >= ACHROMATIC_EPS) & (n0 < ACHROMATIC_EPS), 0.0, theta)


def robust_factor(theta, beta: float):
    """Suppression factor F = (theta/180)^beta, in [0, 1]."""
    if not 0 < beta <= 1:
        raise ValueError(f"beta must be in (0, 1], got {beta}")
    theta = np.asarray(theta, dtype=np.float64)
    return (theta / 180.0) ** beta


def apply_robust(a2, b2, F):
    """Scale a chroma vector by F: hue unchanged, chroma multiplied by F."""
    return np.asarray(a2) * F, np.asarray(b2) * F


def hue_shift_oracle(rho, gamma):
    """Predicted |hue change| (degrees) of adaptation from (rho, gamma).

    rho is the ratio of pixel chroma to cast chroma; gamma is the cosine
    of the angle between their chroma vectors.  This closed form predicts
    the hue rotation caused by the adaptation's chroma update and serves
    as the sensitivity oracle: near gamma = 1 the result flips between
    180 (rho < 1) and 0 (rho > 1) through 90 at rho = 1.

    Raises:
        ValueError: at the singular point rho = 1, gamma = 1, where the
            adapted chroma vanishes and the hue change is undefined.
    """
    rho = np.asarray(rho, dtype=np.float64)
    gamma = np.asarray(gamma, dtype=np.float64)
    denom2 = rho * rho - 2.0 * gamma * rho + 1.0
    if np.any(denom2 <= 1e-300):
        raise ValueError("singular input: rho = 1 with gamma = 1")
    arg = np.clip((rho - gamma) / np.sqrt(denom2), -1.0, 1.0)
    return np.degrees(np.arccos(arg))
