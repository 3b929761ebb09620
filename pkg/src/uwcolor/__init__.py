"""Underwater image color correction by complementary adaptation in CIELAB.

A dominant blue/green cast is estimated as the Gaussian-blurred color
field and neutralized by pulling every pixel towards the complement of
its local cast (a closed-form Tikhonov minimizer).  The adapted image is
then enhanced hue-preservingly within the sRGB gamut, with small CIELAB
uniformity corrections, and scored by the UCIQE/UIQM underwater quality
metrics.

Typical use::

    import uwcolor

    table = uwcolor.cached_gamut_table()
    img = uwcolor.load_rgb("reef.png")
    result = uwcolor.correct_image(img, uwcolor.PipelineConfig(), table)
    uwcolor.save_rgb(result.rgb, "reef_corrected.png")
"""

from .adaptation import AdaptationParams, adapt, adaptation_objective, verify_minimizer
from .colorspace import (
    ACHROMATIC_EPS,
    chroma,
    complement,
    delta_e,
    hue_angle,
    lab_to_srgb,
    srgb_to_lab,
    srgb_unit_to_lab,
)
from .enhancement import (
    EnhanceParams,
    apply_robust,
    gamma_enhance_chroma,
    hue_difference,
    hue_shift_oracle,
    rescale_chroma,
    robust_factor,
    stretch_lightness,
)
from .filtering import (
    SigmaTriplet,
    default_sigma,
    estimate_cast,
    gaussian_blur_plane,
    gaussian_kernel,
)
from .gamut import (
    GamutTable,
    build_gamut_table,
    cached_gamut_table,
    clip_to_gamut,
    load_gamut_table,
    max_chroma,
    save_gamut_table,
)
from .imageio import ImageFormatError, load_rgb, save_rgb
from .metrics import QualityReport, UciqeResult, UiqmResult, score_image, uciqe, uiqm
from .pipeline import (
    BatchReport,
    CorrectionResult,
    PipelineConfig,
    correct_image,
    run_batch,
)
from .uniformity import (
    UniformityParams,
    adjust_blue_hue,
    hk_g,
    hk_inverse_adjust,
    hk_perceived_lightness,
)

__version__ = "0.1.0"

__all__ = [
    "ACHROMATIC_EPS",
    "AdaptationParams",
    "BatchReport",
    "CorrectionResult",
    "EnhanceParams",
    "GamutTable",
    "ImageFormatError",
    "PipelineConfig",
    "QualityReport",
    "SigmaTriplet",
    "UciqeResult",
    "UiqmResult",
    "UniformityParams",
    "adapt",
    "adaptation_objective",
    "adjust_blue_hue",
    "apply_robust",
    "build_gamut_table",
    "cached_gamut_table",
    "chroma",
    "clip_to_gamut",
    "complement",
    "correct_image",
    "default_sigma",
    "delta_e",
    "estimate_cast",
    "gamma_enhance_chroma",
    "gaussian_blur_plane",
    "gaussian_kernel",
    "hk_g",
    "hk_inverse_adjust",
    "hk_perceived_lightness",
    "hue_angle",
    "hue_difference",
    "hue_shift_oracle",
    "lab_to_srgb",
    "load_gamut_table",
    "load_rgb",
    "max_chroma",
    "rescale_chroma",
    "robust_factor",
    "run_batch",
    "save_gamut_table",
    "save_rgb",
    "score_image",
    "srgb_to_lab",
    "srgb_unit_to_lab",
    "stretch_lightness",
    "uciqe",
    "uiqm",
    "verify_minimizer",
]
