"""No-reference quality scores for underwater images: UCIQE and UIQM.

Both metrics are linear combinations of image attributes with
statistically derived coefficients, taken from their original
publications:

* UCIQE -- M. Yang and A. Sowmya, "An Underwater Color Image Quality
  Evaluation Metric", IEEE TIP 24(12), 2015.
      UCIQE = 0.4680 * sigma_c + 0.2745 * con_l + 0.2576 * mu_s
  computed in CIELAB: sigma_c is the standard deviation of chroma,
  con_l the difference between the mean top 1% and mean bottom 1% of
  lightness, mu_s the mean saturation C / sqrt(C^2 + L^2).  Lightness
  and chroma enter rescaled by 1/100 so scores keep the conventional
  0-to-~1 range.

* UIQM -- K. Panetta, C. Gao and S. Agaian, "Human-Visual-System-Inspired
  Underwater Image Quality Measures", IEEE J. Oceanic Eng. 41(3), 2016.
      UIQM = 0.0282 * UICM + 0.2953 * UISM + 3.5753 * UIConM
  UICM is colorfulness from alpha-trimmed statistics of the opponent
  channels RG = R - G and YB = (R + G)/2 - B; UISM is Sobel-edge
  sharpness scored by a log ratio over blocks; UIConM is blockwise
  Michelson contrast entropy.  Blocks are 8x8 pixels with partial edge
  blocks truncated; channels are processed as floats in [0, 255].

Higher is better for both.  Scores are deterministic pixel statistics:
identical input gives identical output, and whole-image rotations or
flips leave them unchanged (exactly, for block-aligned sizes).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import ndimage

from .colorspace import check_rgb_image, srgb_to_lab

# Yang & Sowmya (2015) coefficient set.
UCIQE_COEFFS = (0.4680, 0.2745, 0.2576)
# Panetta, Gao & Agaian (2016); sub-metric constants below.
UIQM_COEFFS = (0.0282, 0.2953, 3.5753)
UICM_MU_WEIGHT = -0.0268
UICM_SIGMA_WEIGHT = 0.1586
UISM_LAMBDAS = (0.299, 0.587, 0.114)
TRIM_ALPHA = 0.1
BLOCK = 8


@dataclass(frozen=True)
class UciqeResult:
    value: float
    chroma_std: float
    luminance_contrast: float
    mean_saturation: float


@dataclass(frozen=True)
class UiqmResult:
    value: float
    uicm: float
    uism: float
    uiconm: float


@dataclass(frozen=True)
class QualityReport:
    """UCIQE/UIQM values with their sub-components, all finite floats."""

    uciqe: float
    uciqe_chroma_std: float
    uciqe_luminance_contrast: float
    uciqe_mean_saturation: float
    uiqm: float
    uicm: float
    uism: float
    uiconm: float

    def to_dict(self) -> dict:
        return asdict(self)


def uciqe(img: np.ndarray) -> UciqeResult:
    """UCIQE score (plus components) of an 8-bit RGB image."""
    img = check_rgb_image(img)
    lab = srgb_to_lab(img)
    L = lab[..., 0].ravel()
    C = np.hypot(lab[..., 1], lab[..., 2]).ravel()
    c_std = float(np.std(C / 100.0))
    k = max(1, int(round(0.01 * L.size)))
    L_sorted = np.sort(L)
    l_con = float((L_sorted[-k:].mean() - L_sorted[:k].mean()) / 100.0)
    norm = np.hypot(C, L)
    sat = np.divide(C, norm, out=np.zeros_like(C), where=norm > 0)
    s_mean = float(sat.mean())
    value = (
        UCIQE_COEFFS[0] * c_std + UCIQE_COEFFS[1] * l_con + UCIQE_COEFFS[2] * s_mean
    )
    return UciqeResult(float(value), c_std, l_con, s_mean)


def uiqm(img: np.ndarray) -> UiqmResult:
    """UIQM score (plus components) of an 8-bit RGB image."""
    img = check_rgb_image(img)
    uicm = _uicm(img)
    uism = _uism(img)
    uiconm = _uiconm(img)
    value = UIQM_COEFFS[0] * uicm + UIQM_COEFFS[1] * uism + UIQM_COEFFS[2] * uiconm
    return UiqmResult(float(value), float(uicm), float(uism), float(uiconm))


def score_image(img: np.ndarray) -> QualityReport:
    """Both metrics with components for one image."""
    u1 = uciqe(img)
    u2 = uiqm(img)
    return QualityReport(
        uciqe=u1.value,
        uciqe_chroma_std=u1.chroma_std,
        uciqe_luminance_contrast=u1.luminance_contrast,
        uciqe_mean_saturation=u1.mean_saturation,
        uiqm=u2.value,
        uicm=u2.uicm,
        uism=u2.uism,
        uiconm=u2.uiconm,
    )


def _trimmed_mean(x: np.ndarray, alpha: float = TRIM_ALPHA) -> float:
    x = np.sort(x.ravel())
    k = int(alpha * x.size)
    core = x[k : x.size - k]
    if core.size == 0:
        core = x
    return float(core.mean())


def _uicm(img: np.ndarray) -> float:
    r = img[..., 0].astype(np.float64)
    g = img[..., 1].astype(np.float64)
    b = img[..., 2].astype(np.float64)
    rg = r - g
    yb = 0.5 * (r + g) - b
    mu_rg = _trimmed_mean(rg)
    mu_yb = _trimmed_mean(yb)
    var_rg = float(np.mean((rg - mu_rg) ** 2))
    var_yb = float(np.mean((yb - mu_yb) ** 2))
    return UICM_MU_WEIGHT * np.hypot(mu_rg, mu_yb) + UICM_SIGMA_WEIGHT * np.sqrt(
        var_rg + var_yb
    )


def _block_view(plane: np.ndarray) -> np.ndarray:
    """(H, W) -> (H//B, W//B, B, B), truncating partial edge blocks."""
    hb = plane.shape[0] // BLOCK
    wb = plane.shape[1] // BLOCK
    if hb == 0 or wb == 0:
        raise ValueError(f"image too small for {BLOCK}x{BLOCK} blocks")
    trimmed = plane[: hb * BLOCK, : wb * BLOCK]
    return trimmed.reshape(hb, BLOCK, wb, BLOCK).swapaxes(1, 2)


def _eme(plane: np.ndarray) -> float:
    """Log max/min ratio averaged over blocks; zero-valued blocks skipped."""
    blocks = _block_view(plane)
    bmax = blocks.max(axis=(2, 3))
    bmin = blocks.min(axis=(2, 3))
    ok = bmin > 0
    ratio = np.ones_like(bmax)
    np.divide(bmax, bmin, out=ratio, where=ok)
    logs = np.where(ok, np.log(ratio), 0.0)
    return float(2.0 / logs.size * logs.sum())


def _uism(img: np.ndarray) -> float:
    total = 0.0
    for ch, lam in zip(range(3), UISM_LAMBDAS):
        plane = img[..., ch].astype(np.float64)
        sx = ndimage.sobel(plane, axis=1, mode="reflect")
        sy = ndimage.sobel(plane, axis=0, mode="reflect")
        edge = np.hypot(sx, sy) * plane
        total += lam * _eme(edge)
    return total


def _uiconm(img: np.ndarray) -> float:
    """Blockwise Michelson contrast entropy of the intensity plane."""
    intensity = img.astype(np.float64).mean(axis=2)
    blocks = _block_view(intensity)
    bmax = blocks.max(axis=(2, 3))
    bmin = blocks.min(axis=(2, 3))
    top = bmax - bmin
    bot = bmax + bmin
    ok = (top > 0) & (bot > 0)
    w = np.ones_like(top)
    np.divide(top, bot, out=w, where=ok)
    terms = np.where(ok, w * np.log(np.where(ok, w, 1.0)), 0.0)
    return float(-terms.sum() / terms.size)
