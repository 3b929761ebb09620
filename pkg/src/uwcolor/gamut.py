"""Approximate sRGB gamut boundary in CIELAB, with max-chroma queries.

The gamut is approximated by 101 convex slices: RGB samples are converted
to CIELAB, their lightness is digitized with the ceil function, and the
2-D convex hull of (a*, b*) is computed per digitized lightness.  The
maximal chroma for a (lightness, hue) query is the distance from the
origin to the hull edge in the hue direction, obtained from the stored
vertex angles and radii by basic trigonometry.

Because hull extremes come from colors on the surface of the RGB cube,
random volume samples alone leave the sparse slices (very dark / very
light) badly undersized.  The builder therefore always augments the
random samples with a deterministic sweep of the cube surface and edges,
which makes slice hulls reach the true boundary to within ~0.25 chroma
units while keeping the build fully reproducible.

Tables are immutable after construction; concurrent queries need no
synchronization.  A small binary cache avoids rebuilding per process.
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .colorspace import srgb_unit_to_lab

N_SLICES = 101

_CACHE_MAGIC = b"UWCGAMUT"
_CACHE_VERSION = 1

# Deterministic cube-surface sweep densities (points per face edge / cube edge).
_FACE_GRID = 257
_EDGE_GRID = 4097


class GamutCacheError(RuntimeError):
    """Raised when a cache file is unreadable or was built with other parameters."""


@dataclass(frozen=True)
class _SliceBoundary:
    """Convex hull of one lightness slice, origin strictly inside.

    vertices: (n, 2) hull vertices in counter-clockwise order starting at
        the smallest polar angle.
    angles:   (n,) polar angles in degrees, strictly increasing.
    radii:    (n,) vertex distances from the origin.
    turn:     (n,) radians; the angle at vertex j between the segment back
        to the origin and the edge towards vertex j+1 (wrapping).
    """

    vertices: np.ndarray
    angles: np.ndarray
    radii: np.ndarray
    turn: np.ndarray


class GamutTable:
    """Per-lightness convex slices of the sRGB gamut in the a*-b* plane."""

    def __init__(self, slices, sample_count: int, seed: int):
        if len(slices) != N_SLICES:
            raise ValueError(f"expected {N_SLICES} slices, got {len(slices)}")
        self.slices = tuple(slices)
        self.sample_count = int(sample_count)
        self.seed = int(seed)

    def is_degenerate(self, level: int) -> bool:
        return self.slices[level] is None


def _boundary_sweep() -> np.ndarray:
    """Deterministic grid over the 6 faces and 12 edges of the unit RGB cube."""
    parts = []
    g = np.linspace(0.0, 1.0, _FACE_GRID)
    u, v = np.meshgrid(g, g, indexing="ij")
    u = u.ravel()
    v = v.ravel()
    for axis in range(3):
        for val in (0.0, 1.0):
            p = np.empty((u.size, 3), dtype=np.float64)
            p[:, axis] = val
            p[:, (axis + 1) % 3] = u
            p[:, (axis + 2) % 3] = v
            parts.append(p)
    e = np.linspace(0.0, 1.0, _EDGE_GRID)
    for axis in range(3):
        for c1 in (0.0, 1.0):
            for c2 in (0.0, 1.0):
                p = np.empty((e.size, 3), dtype=np.float64)
                p[:, axis] = e
                p[:, (axis + 1) % 3] = c1
                p[:, (axis + 2) % 3] = c2
                parts.append(p)
    return np.concatenate(parts, axis=0)


def _finish_slice(verts: np.ndarray) -> _SliceBoundary:
    """Build slice data from angle-ordered CCW vertices with origin inside."""
    ang = np.degrees(np.arctan2(verts[:, 1], verts[:, 0])) % 360.0
    radii = np.hypot(verts[:, 0], verts[:, 1])
    nxt = np.roll(verts, -1, axis=0)
    edge = nxt - verts
    to_origin = -verts
    cross = to_origin[:, 0] * edge[:, 1] - to_origin[:, 1] * edge[:, 0]
    dot = to_origin[:, 0] * edge[:, 0] + to_origin[:, 1] * edge[:, 1]
    turn = np.arctan2(np.abs(cross), dot)
    return _SliceBoundary(vertices=verts, angles=ang, radii=radii, turn=turn)


def _make_slice(points: np.ndarray) -> _SliceBoundary | None:
    """Hull one slice's (a*, b*) points; None if degenerate."""
    if len(points) < 3:
        return None
    try:
        hull = ConvexHull(points)
    except QhullError:
        return None
    verts = points[hull.vertices]  # counter-clockwise
    # The radial max-chroma formula needs the origin strictly inside.
    nxt = np.roll(verts, -1, axis=0)
    cross = verts[:, 0] * nxt[:, 1] - verts[:, 1] * nxt[:, 0]
    if not (cross > 1e-9).all():
        return None
    ang = np.degrees(np.arctan2(verts[:, 1], verts[:, 0])) % 360.0
    order = np.argsort(ang, kind="stable")
    verts = verts[order]
    ang = ang[order]
    # Collapse near-equal angles, keeping the farther vertex, so angles are
    # strictly increasing and searchsorted sectors are well defined.
    radii = np.hypot(verts[:, 0], verts[:, 1])
    while len(verts) >= 3:
        keep = np.ones(len(ang), dtype=bool)
        for i in range(1, len(ang)):
            if ang[i] - ang[i - 1] <= 1e-10:
                drop = i if radii[i] <= radii[i - 1] else i - 1
                keep[drop] = False
        if keep.all():
            break
        verts = verts[keep]
        ang = ang[keep]
        radii = radii[keep]
    if len(verts) < 3:
        return None
    return _finish_slice(verts)


def build_gamut_table(sample_count: int = 500_000, seed: int = 42) -> GamutTable:
    """Sample the RGB cube, slice by digitized lightness, hull each slice.

    Args:
        sample_count: number of uniform random samples of the cube
            (>= 10000).  The deterministic surface sweep is added on top.
        seed: RNG seed; a fixed seed gives a bit-identical table.
    """
    if sample_count < 10_000:
        raise ValueError(f"sample_count must be >= 10000, got {sample_count}")
    rng = np.random.default_rng(seed)
    rgb = np.concatenate([rng.random((sample_count, 3)), _boundary_sweep()])
    lab = srgb_unit_to_lab(rgb)
    levels = np.ceil(lab[:, 0]).astype(np.int64)
    slices = []
    for level in range(N_SLICES):
        pts = lab[levels == level, 1:]
        slices.append(_make_slice(pts))
    return GamutTable(slices, sample_count, seed)


def _radial_extent(sl: _SliceBoundary, h_deg: np.ndarray) -> np.ndarray:
    """Distance from the origin to the hull edge in direction h (degrees)."""
    n = len(sl.angles)
    j = np.searchsorted(sl.angles, h_deg, side="right") - 1
    j = np.where(j < 0, n - 1, j)
    alpha = np.radians((h_deg - sl.angles[j]) % 360.0)
    rho = sl.turn[j]
    denom = np.sin(np.pi - alpha - rho)
    return sl.radii[j] * np.sin(rho) / np.maximum(denom, 1e-12)


def max_chroma(table: GamutTable, L, h):
    """Maximal in-gamut chroma at lightness L (slice ceil(L)) and hue h.

    Degenerate slices report 0.  Accepts scalars or broadcastable arrays.
    """
    L_arr, h_arr = np.broadcast_arrays(
        np.asarray(L, dtype=np.float64), np.asarray(h, dtype=np.float64)
    )
    scalar = L_arr.ndim == 0
    shape = L_arr.shape
    L_flat = np.atleast_1d(L_arr).ravel()
    h_flat = np.atleast_1d(h_arr).ravel() % 360.0
    out = np.zeros(L_flat.shape, dtype=np.float64)
    idx = np.ceil(np.clip(L_flat, 0.0, 100.0)).astype(np.int64)
    # Group queries by slice through one sort instead of 101 mask scans.
    order = np.argsort(idx, kind="stable")
    sorted_idx = idx[order]
    levels = np.unique(sorted_idx)
    bounds = np.searchsorted(sorted_idx, levels)
    bounds = np.append(bounds, sorted_idx.size)
    for k, level in enumerate(levels):
        sl = table.slices[level]
        if sl is None:
            continue
        sel = order[bounds[k]:bounds[k + 1]]
        out[sel] = _radial_extent(sl, h_flat[sel])
    if scalar:
        return float(out[0])
    return out.reshape(shape)


def clip_to_gamut(table: GamutTable, lab):
    """Shrink chroma to the slice maximum, keeping lightness and hue.

    In-gamut colors are returned unchanged; clipped colors land a hair
    (1e-9 relative) inside the boundary so they re-pass the gamut check.
    Accepts a single (3,) color or any (..., 3) stack.
    """
    lab = np.asarray(lab, dtype=np.float64)
    a = lab[..., 1]
    b = lab[..., 2]
    c = np.hypot(a, b)
    h = np.degrees(np.arctan2(b, a)) % 360.0
    cmax = max_chroma(table, lab[..., 0], h)
    over = c > cmax
    scale = np.ones_like(c)
    np.divide(cmax, c, out=scale, where=over)
    scale = np.where(over, scale * (1.0 - 1e-9), 1.0)
    out = lab.copy()
    out[..., 1] = a * scale
    out[..., 2] = b * scale
    return out


def save_gamut_table(table: GamutTable, path: str | os.PathLike) -> None:
    """Write the table as a little-endian binary cache file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    chunks = [
        _CACHE_MAGIC,
        struct.pack("<IQQ", _CACHE_VERSION, table.sample_count, table.seed),
    ]
    for sl in table.slices:
        if sl is None:
            chunks.append(struct.pack("<I", 0))
        else:
            chunks.append(struct.pack("<I", len(sl.vertices)))
            chunks.append(sl.vertices.astype("<f8").tobytes())
    path.write_bytes(b"".join(chunks))


def load_gamut_table(path: str | os.PathLike) -> GamutTable:
    """Read a table cache; raises GamutCacheError on any mismatch."""
    data = Path(path).read_bytes()
    if data[:8] != _CACHE_MAGIC:
        raise GamutCacheError("bad magic bytes")
    off = 8
    try:
        version, sample_count, seed = struct.unpack_from("<IQQ", data, off)
    except struct.error as exc:
        raise GamutCacheError("truncated header") from exc
    off += struct.calcsize("<IQQ")
    if version != _CACHE_VERSION:
        raise GamutCacheError(f"cache version {version}, expected {_CACHE_VERSION}")
    slices = []
    for _ in range(N_SLICES):
        try:
            (n,) = struct.unpack_from("<I", data, off)
        except struct.error as exc:
            raise GamutCacheError("truncated slice table") from exc
        off += 4
        if n == 0:
            slices.append(None)
            continue
        nbytes = n * 2 * 8
        if off + nbytes > len(data):
            raise GamutCacheError("truncated slice data")
        verts = np.frombuffer(data, dtype="<f8", count=n * 2, offset=off)
        off += nbytes
        verts = verts.reshape(n, 2).astype(np.float64)
        if n < 3 or not np.isfinite(verts).all():
            raise GamutCacheError("corrupt slice geometry")
        # Stored vertices are already angle-ordered CCW with the origin
        # inside; rebuilding the trig tables directly (no re-hulling)
        # reproduces the built table bit for bit.
        nxt = np.roll(verts, -1, axis=0)
        cross = verts[:, 0] * nxt[:, 1] - verts[:, 1] * nxt[:, 0]
        if not (cross > 0).all():
            raise GamutCacheError("corrupt slice geometry")
        slices.append(_finish_slice(verts))
    if off != len(data):
        raise GamutCacheError("trailing bytes in cache file")
    return GamutTable(slices, sample_count, seed)


def default_cache_path() -> Path:
    base = os.environ.get("UWCOLOR_CACHE_DIR")
    if base:
        return Path(base) / "gamut.bin"
    return Path.home() / ".cache" / "uwcolor" / "gamut.bin"


def cached_gamut_table(
    sample_count: int = 500_000,
    seed: int = 42,
    cache_path: str | os.PathLike | None = None,
) -> GamutTable:
    """Load the cached table, rebuilding (and rewriting) on any mismatch."""
    path = Path(cache_path) if cache_path is not None else default_cache_path()
    if path.exists():
        try:
            table = load_gamut_table(path)
            if table.sample_count == sample_count and table.seed == seed:
                return table
        except (GamutCacheError, OSError):
            pass
    table = build_gamut_table(sample_count, seed)
    save_gamut_table(table, path)
    return table
