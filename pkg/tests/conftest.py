"""Shared fixtures: gamut tables and test images."""

from __future__ import annotations

import numpy as np
import pytest
from PIL import Image
from skimage import data

import uwcolor


@pytest.fixture(scope="session")
def table() -> uwcolor.GamutTable:
    """The default gamut table (500k samples, seed 42), built once."""
    return uwcolor.build_gamut_table(500_000, 42)


@pytest.fixture(scope="session")
def natural_image() -> np.ndarray:
    """A natural 800x600 photograph (resized scikit-image sample)."""
    src = Image.fromarray(data.astronaut())
    return np.asarray(src.resize((800, 600), Image.LANCZOS), dtype=np.uint8)


@pytest.fixture(scope="session")
def green_cast_image(natural_image) -> np.ndarray:
    """The natural image with a synthetic green cast (a* shifted by -25)."""
    lab = uwcolor.srgb_to_lab(natural_image)
    lab[..., 1] -= 25.0
    return uwcolor.lab_to_srgb(lab)


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(20240811)


def random_rgb_image(rng: np.random.Generator, h: int = 64, w: int = 64) -> np.ndarray:
    return rng.integers(0, 256, size=(h, w, 3), dtype=np.uint8)
