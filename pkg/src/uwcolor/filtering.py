"""Separable Gaussian convolution and the color-cast field estimator.

The cast of an underwater image is modeled as the channel-wise Gaussian
blur of its Lab planes, with a wider kernel on L* than on a*/b*.  Kernels
are truncated at radius ceil(3*sigma) and renormalized (the mass lost
before renormalization is < 0.3%).  Boundaries use whole-sample mirror
reflection (the edge pixel is repeated), which preserves constants and
affine shifts exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage


def gaussian_kernel(sigma: float) -> np.ndarray:
    """Normalized 1-D Gaussian kernel truncated at radius max(1, ceil(3*sigma))."""
    if sigma <= 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    r = max(1, int(np.ceil(3.0 * sigma)))
    x = np.arange(-r, r + 1, dtype=np.float64)
    k = np.exp(-0.5 * (x / sigma) ** 2)
    return k / k.sum()


def gaussian_blur_plane(plane: np.ndarray, sigma: float) -> np.ndarray:
    """Separable Gaussian blur of a 2-D plane with mirror boundary handling.

    Equivalent to dense 2-D convolution with the outer product of the 1-D
    kernel, but in two passes.  scipy's 'reflect' mode is the whole-sample
    mirror (edge pixel repeated) required here.
    """
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or plane.size == 0:
        raise ValueError(f"expected a non-empty 2-D plane, got shape {plane.shape}")
    k = gaussian_kernel(sigma)
    out = ndimage.correlate1d(plane, k, axis=1, mode="reflect")
    return ndimage.correlate1d(out, k, axis=0, mode="reflect")


def default_sigma(width: int, height: int) -> float:
    """Default chroma-plane sigma: 0.25 * (max(W, H) / 2 - 1).

    The resulting filter window spans roughly half the larger image side.
    """
    if width < 3 or height < 3:
        raise ValueError(f"image must be at least 3x3, got {width}x{height}")
    return 0.25 * (max(width, height) / 2.0 - 1.0)


@dataclass(frozen=True)
class SigmaTriplet:
    """Per-channel blur widths (pixels) for the cast estimate.

    The chroma planes share one width and the lightness plane is blurred
    n times wider (n > 1).
    """

    sigma_L: float
    sigma_a: float
    sigma_b: float

    def __post_init__(self):
        if not (self.sigma_a > 0 and self.sigma_b > 0 and self.sigma_L > 0):
            raise ValueError("all sigmas must be positive")
        if self.sigma_a != self.sigma_b:
            raise ValueError("sigma_a and sigma_b must be equal")
        if self.sigma_L <= self.sigma_a:
            raise ValueError("sigma_L must exceed sigma_a (n > 1)")

    @classmethod
    def from_sigma0(cls, sigma0: float, n: float = 3.0) -> "SigmaTriplet":
        """Build the triplet (n*sigma0, sigma0, sigma0)."""
        if n <= 1:
            raise ValueError(f"n must exceed 1, got {n}")
        return cls(sigma_L=n * sigma0, sigma_a=sigma0, sigma_b=sigma0)


def estimate_cast(lab: np.ndarray, sigmas: SigmaTriplet) -> np.ndarray:
    """Estimate the color-cast field: channel-wise blur of a Lab image."""
    lab = np.asarray(lab, dtype=np.float64)
    if lab.ndim != 3 or lab.shape[2] != 3:
        raise ValueError(f"expected a (H, W, 3) Lab image, got shape {lab.shape}")
    cast = np.empty_like(lab)
    cast[:, :, 0] = gaussian_blur_plane(lab[:, :, 0], sigmas.sigma_L)
    cast[:, :, 1] = gaussian_blur_plane(lab[:, :, 1], sigmas.sigma_a)
    cast[:, :, 2] = gaussian_blur_plane(lab[:, :, 2], sigmas.sigma_b)
    return cast
