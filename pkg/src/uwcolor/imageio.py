"""PNG/JPEG decode and encode for 8-bit three-channel images.

Only opaque 8-bit RGB content is supported.  Grayscale and palette
images without transparency are promoted to RGB; anything carrying an
alpha channel is rejected so color statistics never silently mix with
transparency.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
from PIL import Image

SUPPORTED_EXTENSIONS = (".png", ".jpg", ".jpeg")

_ALPHA_MODES = {"RGBA", "LA", "PA", "RGBa", "La"}


class ImageFormatError(ValueError):
    """Raised for unsupported image content (alpha channel, bit depth...)."""


def load_rgb(path: str | os.PathLike) -> np.ndarray:
    """Load a PNG or JPEG file as a (H, W, 3) uint8 RGB array.

    Raises:
        ImageFormatError: if the image has an alpha channel or is not
            8 bits per sample.
        OSError: if the file cannot be read or decoded.
    """
    path = Path(path)
    with Image.open(path) as im:
        if im.mode in _ALPHA_MODES or "transparency" in im.info:
            raise ImageFormatError(
                f"{path.name}: images with an alpha channel are not supported"
            )
        if im.mode in ("I", "I;16", "I;16B", "I;16L", "F"):
            raise ImageFormatError(
                f"{path.name}: only 8-bit images are supported (mode {im.mode})"
            )
        if im.mode != "RGB":
            im = im.convert("RGB")
        arr = np.asarray(im, dtype=np.uint8)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ImageFormatError(f"{path.name}: expected three channels")
    return arr


def save_rgb(img: np.ndarray, path: str | os.PathLike, jpeg_quality: int = 95) -> None:
    """Write a (H, W, 3) uint8 RGB array as PNG or JPEG, chosen by extension."""
    path = Path(path)
    ext = path.suffix.lower()
    if ext not in SUPPORTED_EXTENSIONS:
        raise ImageFormatError(f"unsupported output extension {ext!r}")
    img = np.ascontiguousarray(img, dtype=np.uint8)
    pil = Image.fromarray(img, mode="RGB")
    if ext == ".png":
        pil.save(path, format="PNG")
    else:
        pil.save(path, format="JPEG", quality=jpeg_quality)
