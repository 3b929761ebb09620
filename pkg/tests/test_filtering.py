"""Tests for the separable Gaussian blur and cast estimator."""

import numpy as np
import pytest

from uwcolor.filtering import (
    SigmaTriplet,
    default_sigma,
    estimate_cast,
    gaussian_blur_plane,
    gaussian_kernel,
)


def dense_blur_oracle(plane: np.ndarray, sigma: float) -> np.ndarray:
    """Direct 2-D convolution with symmetric padding; O(N^2 K^2) reference."""
    k = gaussian_kernel(sigma)
    r = (len(k) - 1) // 2
    k2d = np.outer(k, k)
    padded = np.pad(plane, r, mode="symmetric")
    out = np.zeros_like(plane, dtype=np.float64)
    for i in range(plane.shape[0]):
        for j in range(plane.shape[1]):
            out[i, j] = np.sum(padded[i : i + 2 * r + 1, j : j + 2 * r + 1] * k2d)
    return out


class TestKernel:
    @pytest.mark.parametrize("sigma", [0.1, 0.7, 1.0, 3.5, 12.0])
    def test_normalized(self, sigma):
        assert abs(gaussian_kernel(sigma).sum() - 1.0) < 1e-12

    def test_radius(self):
        assert len(gaussian_kernel(2.0)) == 2 * 6 + 1
        assert len(gaussian_kernel(0.1)) == 3  # floor radius of 1

    def test_rejects_nonpositive_sigma(self):
        with pytest.raises(ValueError):
            gaussian_kernel(0.0)


class TestBlurPlane:
    def test_constant_plane_preserved(self, rng):
        for sigma in (0.5, 3.0, 40.0):
            plane = np.full((12, 17), 7.25)
            out = gaussian_blur_plane(plane, sigma)
            assert np.allclose(out, 7.25, atol=1e-12)

    def test_impulse_gives_kernel_outer_product(self):
        sigma = 2.0
        k = gaussian_kernel(sigma)
        r = (len(k) - 1) // 2
        plane = np.zeros((41, 41))
        plane[20, 20] = 1.0
        out = gaussian_blur_plane(plane, sigma)
        expected = np.outer(k, k)
        window = out[20 - r : 20 + r + 1, 20 - r : 20 + r + 1]
        assert np.abs(window - expected).max() < 1e-6
        # nothing outside the kernel footprint
        assert out[20, 20 + r + 1] == 0.0

    def test_tiny_sigma_near_identity(self, rng):
        plane = rng.random((16, 16)) * 100
        out = gaussian_blur_plane(plane, 0.1)
        assert np.abs(out - plane).max() < 1e-3

    @pytest.mark.parametrize("sigma", [0.8, 2.3])
    def test_matches_dense_oracle(self, rng, sigma):
        plane = rng.random((16, 16)) * 50
        fast = gaussian_blur_plane(plane, sigma)
        slow = dense_blur_oracle(plane, sigma)
        assert np.abs(fast - slow).max() < 1e-9

    def test_commutes_with_offset(self, rng):
        plane = rng.random((20, 14)) * 10
        sigma = 2.5
        shifted = gaussian_blur_plane(plane + 42.0, sigma)
        assert np.abs(shifted - (gaussian_blur_plane(plane, sigma) + 42.0)).max() < 1e-10

    def test_extrema_bounded_by_input(self, rng):
        plane = rng.random((25, 30)) * 100 - 50
        out = gaussian_blur_plane(plane, 4.0)
        assert out.max() <= plane.max() + 1e-12
        assert out.min() >= plane.min() - 1e-12

    def test_rejects_bad_plane(self):
        with pytest.raises(ValueError):
            gaussian_blur_plane(np.zeros((3, 3, 3)), 1.0)


class TestDefaultSigma:
    def test_spec_values(self):
        assert default_sigma(802, 600) == 100.0
        assert default_sigma(9, 9) == 0.875
        assert default_sigma(100, 402) == 50.0

    def test_rejects_small_images(self):
        with pytest.raises(ValueError):
            default_sigma(2, 100)
        with pytest.raises(ValueError):
            default_sigma(100, 2)


class TestSigmaTriplet:
    def test_from_sigma0(self):
        s = SigmaTriplet.from_sigma0(4.0, n=3.0)
        assert (s.sigma_L, s.sigma_a, s.sigma_b) == (12.0, 4.0, 4.0)

    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            SigmaTriplet(sigma_L=1.0, sigma_a=2.0, sigma_b=2.0)
        with pytest.raises(ValueError):
            SigmaTriplet(sigma_L=6.0, sigma_a=2.0, sigma_b=3.0)
        with pytest.raises(ValueError):
            SigmaTriplet.from_sigma0(2.0, n=1.0)


class TestEstimateCast:
    def test_constant_image_fixed_point(self):
        lab = np.empty((10, 12, 3))
        lab[..., 0], lab[..., 1], lab[..., 2] = 60.0, 5.0, -8.0
        cast = estimate_cast(lab, SigmaTriplet.from_sigma0(2.0))
        assert np.allclose(cast, lab, atol=1e-12)

    def test_huge_sigma_approaches_channel_means(self):
        # Two-tone half/half plane blurred at sigma = 4 * max(W, H): the
        # center row must approach the global mean within 5% of the step.
        h, w = 16, 24
        lab = np.zeros((h, w, 3))
        lab[:, : w // 2, 0] = 30.0
        lab[:, w // 2 :, 0] = 70.0
        lab[:, : w // 2, 1] = -20.0
        lab[:, w // 2 :, 1] = 10.0
        lab[..., 2] = 5.0
        sigma0 = 4.0 * max(h, w)
        cast = estimate_cast(lab, SigmaTriplet.from_sigma0(sigma0, n=3.0))
        for ch in range(3):
            mean = lab[..., ch].mean()
            step = np.ptp(lab[..., ch])
            center = cast[h // 2, :, ch]
            tol = 0.05 * step if step > 0 else 1e-9
            assert np.abs(center - mean).max() <= tol

    def test_channel_sigmas_differ(self):
        # An impulse spreads n times wider in L than in a/b.
        lab = np.zeros((41, 41, 3))
        lab[20, 20, :] = 100.0
        sigma0 = 2.0
        cast = estimate_cast(lab, SigmaTriplet.from_sigma0(sigma0, n=3.0))
        kL = gaussian_kernel(3.0 * sigma0)
        ka = gaussian_kernel(sigma0)
        assert cast[20, 20, 0] == pytest.approx(100.0 * kL[len(kL) // 2] ** 2, rel=1e-9)
        assert cast[20, 20, 1] == pytest.approx(100.0 * ka[len(ka) // 2] ** 2, rel=1e-9)
        # kernel radii ratio 3:1
        ra = len(ka) // 2
        assert cast[20, 20 + ra + 1, 1] == 0.0
        assert cast[20, 20 + ra + 1, 0] > 0.0
