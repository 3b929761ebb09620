"""Tests for CIELAB conversions and colorimetric primitives."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from uwcolor.colorspace import (
    ACHROMATIC_EPS,
    chroma,
    complement,
    delta_e,
    hue_angle,
    lab_to_srgb,
    srgb_to_lab,
)

finite_colors = st.tuples(
    st.floats(0, 100), st.floats(-128, 128), st.floats(-128, 128)
).map(np.array)


def _lab_lightness_oracle(code: int) -> float:
    """Scalar sRGB-gray -> L* chain, independent of the numpy implementation."""
    u = code / 255.0
    lin = u / 12.92 if u <= 0.04045 else ((u + 0.055) / 1.055) ** 2.4
    t = lin  # gray: Y/Yn equals the linear value exactly
    delta = 6.0 / 29.0
    f = t ** (1.0 / 3.0) if t > delta**3 else t / (3 * delta**2) + 4.0 / 29.0
    return 116.0 * f - 16.0


def _pixel(r, g, b):
    return np.array([[[r, g, b]]], dtype=np.uint8)


class TestSrgbToLab:
    def test_white_maps_to_diffuse_white(self):
        lab = srgb_to_lab(_pixel(255, 255, 255))[0, 0]
        assert lab[0] == pytest.approx(100.0, abs=1e-5)
        assert abs(lab[1]) <= 0.01
        assert abs(lab[2]) <= 0.01

    def test_black(self):
        assert np.allclose(srgb_to_lab(_pixel(0, 0, 0))[0, 0], [0, 0, 0], atol=1e-12)

    def test_mid_gray_matches_scalar_oracle(self):
        lab = srgb_to_lab(_pixel(128, 128, 128))[0, 0]
        assert lab[0] == pytest.approx(_lab_lightness_oracle(128), abs=1e-9)
        assert lab[0] == pytest.approx(53.585, abs=5e-3)
        assert abs(lab[1]) < 1e-9 and abs(lab[2]) < 1e-9

    def test_rejects_non_uint8(self):
        with pytest.raises(ValueError):
            srgb_to_lab(np.zeros((2, 2, 3), dtype=np.float64))

    def test_lightness_in_range(self, rng):
        img = rng.integers(0, 256, size=(32, 32, 3), dtype=np.uint8)
        L = srgb_to_lab(img)[..., 0]
        assert L.min() >= 0.0 and L.max() <= 100.0


class TestLabToSrgb:
    def test_diffuse_white(self):
        assert (lab_to_srgb(np.array([[[100.0, 0.0, 0.0]]]))[0, 0] == 255).all()

    def test_black(self):
        assert (lab_to_srgb(np.array([[[0.0, 0.0, 0.0]]]))[0, 0] == 0).all()

    def test_out_of_gamut_clamped(self):
        out = lab_to_srgb(np.array([[[50.0, 500.0, -500.0]]]))[0, 0]
        assert out.dtype == np.uint8  # no wraparound; values were clamped

    def test_roundtrip_lattice_within_one_code(self):
        # Exhaustive 32^3 sweep: every channel must survive the Lab round
        # trip within +/-1 of its 8-bit code.
        values = np.linspace(0, 255, 32).round().astype(np.uint8)
        r, g, b = np.meshgrid(values, values, values, indexing="ij")
        img = np.stack([r, g, b], axis=-1).reshape(1, -1, 3)
        back = lab_to_srgb(srgb_to_lab(img))
        err = np.abs(back.astype(int) - img.astype(int))
        assert err.max() <= 1


class TestPrimitives:
    def test_chroma_at_origin(self):
        assert chroma(0.0, 0.0) == 0.0

    def test_chroma_pythagorean(self):
        assert chroma(3.0, 4.0) == pytest.approx(5.0)
        assert chroma(-3.0, -4.0) == pytest.approx(5.0)

    @given(st.floats(-200, 200), st.floats(-200, 200))
    def test_chroma_squared_identity(self, a, b):
        assert chroma(a, b) ** 2 == pytest.approx(a * a + b * b, rel=1e-12, abs=1e-12)

    def test_hue_cardinal_directions(self):
        assert hue_angle(1.0, 0.0) == 0.0
        assert hue_angle(0.0, 1.0) == pytest.approx(90.0)
        assert hue_angle(-1.0, -1.0) == pytest.approx(225.0)

    def test_hue_undefined_below_threshold(self):
        assert math.isnan(hue_angle(0.0, 0.0))
        assert math.isnan(hue_angle(ACHROMATIC_EPS / 3, 0.0))

    @given(st.floats(1e-3, 150), st.floats(0, 360, exclude_max=True))
    def test_hue_chroma_roundtrip(self, c, h):
        a = c * math.cos(math.radians(h))
        b = c * math.sin(math.radians(h))
        assert chroma(a, b) == pytest.approx(c, rel=1e-9)
        h_back = float(hue_angle(a, b))
        diff = abs(h_back - h) % 360.0
        assert min(diff, 360.0 - diff) < 1e-9 * max(1.0, h)

    def test_delta_e_examples(self):
        c = np.array([12.0, 5.0, -3.0])
        assert delta_e(c, c) == 0.0
        assert delta_e([0, 0, 0], [100, 0, 0]) == pytest.approx(100.0)
        assert delta_e([50, 3, 0], [50, 0, 4]) == pytest.approx(5.0)

    @given(finite_colors, finite_colors, finite_colors)
    def test_delta_e_is_a_metric(self, c1, c2, c3):
        assert delta_e(c1, c2) == pytest.approx(delta_e(c2, c1))
        assert delta_e(c1, c1) == 0.0
        assert delta_e(c1, c3) <= delta_e(c1, c2) + delta_e(c2, c3) + 1e-9

    def test_complement_examples(self):
        assert np.allclose(complement([50, 0, 0]), [50, 0, 0])
        assert np.allclose(complement([0, 0, 0]), [100, 0, 0])
        assert np.allclose(complement([30, 20, -10]), [70, -20, 10])

    @given(finite_colors)
    def test_complement_is_involution(self, c):
        back = complement(complement(c))
        # Negation is exact; 100 - (100 - L) can round by one ulp of 100
        # when L < 50 (Sterbenz), so allow exactly that much on L.
        assert back[1] == c[1] and back[2] == c[2]
        assert abs(back[0] - c[0]) <= 2.0**-46

    def test_complement_stack(self):
        stack = np.array([[10.0, 2.0, -3.0], [90.0, -7.0, 8.0]])
        out = complement(stack)
        assert np.allclose(out, [[90, -2, 3], [10, 7, -8]])
