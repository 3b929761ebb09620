"""Full correction pipeline, batch driver, and report emission.

Stage order (fixed by the data dependencies of the chroma rescale, which
needs both the adapted and the stretched lightness, and of the final
lightness adjustment, which needs the final chroma):

     1. sRGB -> CIELAB
     2. blue-region hue adjustment (pre-processing)
     3. cast estimation (channel-wise Gaussian blur)
     4. complementary adaptation
     5. gamut clip
     6. lightness stretch
     7. chroma rescale to the stretched lightness
     8. chroma gamma enhancement
     9. robust hue-selective suppression
    10. Helmholtz-Kohlrausch inverse lightness adjustment
    11. gamut clip
    12. CIELAB -> sRGB

Steps 6-9 move lightness and scale chroma radially; hue is preserved to
floating-point roundoff.  Intermediate stages can be captured in memory
or dumped as 16-bit PNGs (one per plane; L encoded over [0, 100] and
a*/b* over [-200, 200], full affine range onto [0, 65535]).

Batch processing is deterministic: a fixed config and gamut seed give
byte-identical outputs and report.  Images are independent, so the batch
may fan out over a worker pool sharing the read-only gamut table.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np
from PIL import Image

from .adaptation import adapt
from .colorspace import (
    ACHROMATIC_EPS,
    check_rgb_image,
    lab_to_srgb,
    srgb_to_lab,
)
from .enhancement import (
    EnhanceParams,
    gamma_enhance_chroma,
    hue_difference,
    rescale_chroma,
    robust_factor,
    stretch_lightness,
)
from .filtering import SigmaTriplet, default_sigma, estimate_cast
from .gamut import GamutTable, cached_gamut_table, clip_to_gamut
from .imageio import SUPPORTED_EXTENSIONS, load_rgb, save_rgb
from .metrics import QualityReport, score_image
from .uniformity import UniformityParams, adjust_blue_hue, hk_inverse_adjust

log = logging.getLogger("uwcolor")

# Affine encodings for dumped stage planes (value range -> [0, 65535]).
PLANE_RANGES = {"L": (0.0, 100.0), "a": (-200.0, 200.0), "b": (-200.0, 200.0)}

STAGE_NAMES = (
    "01_lab",
    "02_bluehue",
    "03_cast",
    "04_adapt",
    "05_clip",
    "06_stretch",
    "07_rescale",
    "08_gamma",
    "09_robust",
    "10_hk",
    "11_clip",
)


@dataclass(frozen=True)
class PipelineConfig:
    """All pipeline tunables; round-trips through text and dict forms.

    ``sigma0 = None`` means "derive from the image size".  ``lam`` is the
    adaptation weight (serialized under the key ``lambda``).
    """

    eta: float = 10.0
    beta: float = 0.25
    lam: float = 1.0
    n: float = 3.0
    sigma0: float | None = None
    mu_deg: float = 45.0
    m: float = 7.0
    stretch_lo: float = 1.0
    stretch_hi: float = 99.0
    stretch_target_lo: float = 5.0
    stretch_target_hi: float = 95.0
    gamut_samples: int = 500_000
    gamut_seed: int = 42
    emit_metrics: bool = False
    emit_intermediates: bool = False

    def __post_init__(self):
        # Component params re-validate; construct them to fail fast.
        self.enhance_params()
        self.uniformity_params()
        if self.lam <= 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")
        if self.n <= 1:
            raise ValueError(f"n must exceed 1, got {self.n}")
        if self.sigma0 is not None and self.sigma0 <= 0:
            raise ValueError(f"sigma0 must be positive, got {self.sigma0}")
        if self.gamut_samples < 10_000:
            raise ValueError("gamut_samples must be >= 10000")

    def enhance_params(self) -> EnhanceParams:
        return EnhanceParams(
            eta=self.eta,
            beta=self.beta,
            stretch_lo=self.stretch_lo,
            stretch_hi=self.stretch_hi,
            stretch_target_lo=self.stretch_target_lo,
            stretch_target_hi=self.stretch_target_hi,
        )

    def uniformity_params(self) -> UniformityParams:
        return UniformityParams(mu_deg=self.mu_deg, m=self.m)

    def to_dict(self) -> dict:
        d = {}
        for f in fields(self):
            key = "lambda" if f.name == "lam" else f.name
            d[key] = getattr(self, f.name)
        return d

    def to_text(self) -> str:
        lines = []
        for key, value in self.to_dict().items():
            if value is None:
                value = "auto"
            elif isinstance(value, bool):
                value = "true" if value else "false"
            lines.append(f"{key} = {value}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, base: "PipelineConfig | None" = None) -> "PipelineConfig":
        """Parse the flat key=value config format; '#' starts a comment."""
        cfg = base if base is not None else cls()
        updates = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line {lineno}: expected 'key = value'")
            key, value = (part.strip() for part in line.split("=", 1))
            field_name = "lam" if key == "lambda" else key
            updates[field_name] = _parse_config_value(key, value, lineno)
        return replace(cfg, **updates)

    @classmethod
    def from_file(cls, path: str | os.PathLike, base: "PipelineConfig | None" = None):
        return cls.from_text(Path(path).read_text(), base=base)


_CONFIG_FLOAT_KEYS = {
    "eta", "beta", "lambda", "n", "mu_deg", "m",
    "stretch_lo", "stretch_hi", "stretch_target_lo", "stretch_target_hi",
}
_CONFIG_INT_KEYS = {"gamut_samples", "gamut_seed"}
_CONFIG_BOOL_KEYS = {"emit_metrics", "emit_intermediates"}


def _parse_config_value(key: str, value: str, lineno: int):
    try:
        if key in _CONFIG_FLOAT_KEYS:
            return float(value)
        if key in _CONFIG_INT_KEYS:
            return int(value)
        if key in _CONFIG_BOOL_KEYS:
            if value.lower() in ("true", "1", "yes"):
                return True
            if value.lower() in ("false", "0", "no"):
                return False
            raise ValueError(value)
        if key == "sigma0":
            return None if value.lower() == "auto" else float(value)
    except ValueError as exc:
        raise ValueError(f"config line {lineno}: bad value for {key!r}: {value!r}") from exc
    raise ValueError(f"config line {lineno}: unknown key {key!r}")


@dataclass
class CorrectionResult:
    """Output image plus optional metrics, diagnostics, and stage captures."""

    rgb: np.ndarray
    report_before: QualityReport | None = None
    report_after: QualityReport | None = None
    sigma0_used: float = 0.0
    hk_clamped_pixels: int = 0
    stages: dict | None = None


def correct_image(
    img: np.ndarray,
    cfg: PipelineConfig,
    table: GamutTable,
    stage_dir: str | os.PathLike | None = None,
    capture_stages: bool = False,
) -> CorrectionResult:
    """Run the full correction pipeline on one RGB image.

    Args:
        img: (H, W, 3) uint8 sRGB input.
        cfg: pipeline configuration.
        table: gamut table shared across images.
        stage_dir: when set, dump every intermediate stage as 16-bit PNGs.
        capture_stages: when True, keep intermediate Lab arrays in the
            result's ``stages`` dict (keyed by STAGE_NAMES).
    """
    img = check_rgb_image(img)
    height, width = img.shape[:2]
    sigma0 = cfg.sigma0 if cfg.sigma0 is not None else default_sigma(width, height)
    eparams = cfg.enhance_params()

    report_before = score_image(img) if cfg.emit_metrics else None

    lab0 = srgb_to_lab(img)
    lab_adj = adjust_blue_hue(lab0, cfg.uniformity_params())
    cast = estimate_cast(lab_adj, SigmaTriplet.from_sigma0(sigma0, cfg.n))
    adapted_raw = adapt(lab_adj, cast, cfg.lam)
    adapted = clip_to_gamut(table, adapted_raw)

    a_ad = adapted[..., 1]
    b_ad = adapted[..., 2]
    L_ad = adapted[..., 0]
    C_ad = np.hypot(a_ad, b_ad)
    h_deg = np.degrees(np.arctan2(b_ad, a_ad)) % 360.0

    L_hat = stretch_lightness(L_ad, eparams)
    C1 = rescale_chroma(C_ad, L_ad, L_hat, h_deg, table)
    C2 = gamma_enhance_chroma(C1, L_hat, h_deg, cfg.eta, table)
    theta = hue_difference(lab_adj[..., 1], lab_adj[..., 2], cast[..., 1], cast[..., 2])
    C_final = robust_factor(theta, cfg.beta) * C2

    chromatic = C_ad >= ACHROMATIC_EPS

    def _with_chroma(C_target: np.ndarray, L_plane: np.ndarray) -> np.ndarray:
        # Radial scaling of the adapted chroma vector: hue is untouched.
        scale = np.zeros_like(C_ad)
        np.divide(C_target, C_ad, out=scale, where=chromatic)
        return np.stack([L_plane, a_ad * scale, b_ad * scale], axis=-1)

    L_final, hk_flags = hk_inverse_adjust(L_hat, C_final, h_deg, return_flags=True)
    final_vec = _with_chroma(C_final, L_final)
    out_lab = clip_to_gamut(table, final_vec)
    out_rgb = lab_to_srgb(out_lab)

    result = CorrectionResult(
        rgb=out_rgb,
        report_before=report_before,
        report_after=score_image(out_rgb) if cfg.emit_metrics else None,
        sigma0_used=float(sigma0),
        hk_clamped_pixels=int(np.count_nonzero(hk_flags)),
    )

    if capture_stages or stage_dir is not None:
        stages = {
            "01_lab": lab0,
            "02_bluehue": lab_adj,
            "03_cast": cast,
            "04_adapt": adapted_raw,
            "05_clip": adapted,
            "06_stretch": _with_chroma(C_ad, L_hat),
            "07_rescale": _with_chroma(C1, L_hat),
            "08_gamma": _with_chroma(C2, L_hat),
            "09_robust": _with_chroma(C_final, L_hat),
            "10_hk": final_vec,
            "11_clip": out_lab,
        }
        if capture_stages:
            result.stages = stages
        if stage_dir is not None:
            dump_stages(stages, stage_dir)
    return result


def encode_plane_u16(plane: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Affine-encode a float plane over [lo, hi] to uint16 codes."""
    scaled = (np.clip(plane, lo, hi) - lo) / (hi - lo) * 65535.0
    return np.rint(scaled).astype(np.uint16)


def decode_plane_u16(codes: np.ndarray, lo: float, hi: float) -> np.ndarray:
    """Inverse of `encode_plane_u16` up to quantization."""
    return codes.astype(np.float64) / 65535.0 * (hi - lo) + lo


def dump_stages(stages: dict, stage_dir: str | os.PathLike) -> None:
    """Write each stage's L/a/b planes as 16-bit PNGs into stage_dir."""
    stage_dir = Path(stage_dir)
    stage_dir.mkdir(parents=True, exist_ok=True)
    for name, lab in stages.items():
        for ch, plane_name in enumerate("Lab"):
            lo, hi = PLANE_RANGES[plane_name]
            codes = encode_plane_u16(lab[..., ch], lo, hi)
            Image.fromarray(codes, mode="I;16").save(
                stage_dir / f"stage{name}_{plane_name}.png"
            )


def load_stage_plane(stage_dir: str | os.PathLike, name: str, plane: str) -> np.ndarray:
    """Read back one dumped stage plane, decoding the affine encoding."""
    path = Path(stage_dir) / f"stage{name}_{plane}.png"
    codes = np.asarray(Image.open(path))
    lo, hi = PLANE_RANGES[plane]
    return decode_plane_u16(codes, lo, hi)


@dataclass
class BatchReport:
    """Per-image metric pairs plus the config echo, as written to disk."""

    config: dict
    images: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    report_path: Path | None = None

    def to_dict(self) -> dict:
        return {"config": self.config, "images": self.images, "skipped": self.skipped}


def run_batch(
    input_dir: str | os.PathLike,
    output_dir: str | os.PathLike,
    cfg: PipelineConfig,
    table: GamutTable | None = None,
    jobs: int = 1,
) -> BatchReport:
    """Correct every PNG/JPEG in input_dir, writing images and report.json.

    Unreadable or unprocessable files are skipped with a diagnostic entry;
    an input directory with no supported images is an error.  Metrics are
    always computed for the report.  Reruns with the same config produce
    byte-identical outputs.
    """
    input_dir = Path(input_dir)
    output_dir = Path(output_dir)
    if not input_dir.is_dir():
        raise FileNotFoundError(f"input directory not found: {input_dir}")
    files = sorted(
        p for p in input_dir.iterdir()
        if p.is_file() and p.suffix.lower() in SUPPORTED_EXTENSIONS
    )
    if not files:
        raise ValueError(f"no supported images (PNG/JPEG) in {input_dir}")
    if table is None:
        table = cached_gamut_table(cfg.gamut_samples, cfg.gamut_seed)
    output_dir.mkdir(parents=True, exist_ok=True)
    batch_cfg = replace(cfg, emit_metrics=True)

    def _one(path: Path) -> tuple[str, dict, bool]:
        try:
            img = load_rgb(path)
            res = correct_image(img, batch_cfg, table)
            save_rgb(res.rgb, output_dir / path.name)
            entry = {
                "file": path.name,
                "uciqe_before": res.report_before.uciqe,
                "uciqe_after": res.report_after.uciqe,
                "uiqm_before": res.report_before.uiqm,
                "uiqm_after": res.report_after.uiqm,
                "sigma0_used": res.sigma0_used,
                "hk_clamped_pixels": res.hk_clamped_pixels,
            }
            return path.name, entry, True
        except Exception as exc:  # per-image failure must not kill the batch
            log.warning("skipping %s: %s", path.name, exc)
            return path.name, {"file": path.name, "error": str(exc)}, False

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_one, files))
    else:
        outcomes = [_one(p) for p in files]
    outcomes.sort(key=lambda item: item[0])

    report = BatchReport(config=cfg.to_dict())
    for _, entry, ok in outcomes:
        (report.images if ok else report.skipped).append(entry)
    report.report_path = output_dir / "report.json"
    report.report_path.write_text(json.dumps(report.to_dict(), indent=2) + "\n")
    return report
