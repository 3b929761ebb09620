"""Command-line interface.

Subcommands:
    correct <in> <out>      correct one image
    batch <in_dir> <out_dir>  correct a directory, writing report.json
    gamut build             build and cache the gamut table
    score <image>           print quality metrics for one image

Exit codes: 0 success, 1 usage error, 2 I/O error, 3 processing error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .gamut import build_gamut_table, cached_gamut_table, default_cache_path, save_gamut_table
from .imageio import load_rgb, save_rgb
from .metrics import score_image
from .pipeline import PipelineConfig, correct_image, run_batch

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_PROCESSING = 3


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; we reserve 2 for I/O."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_pipeline_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--eta", type=float, help="chroma enhancement gamma (>= 1)")
    p.add_argument("--beta", type=float, help="robust factor exponent in (0, 1]")
    p.add_argument("--lambda", dest="lam", type=float, help="adaptation weight (> 0)")
    p.add_argument("--sigma0", type=float, help="cast blur width in pixels (default: auto)")
    p.add_argument("--n", type=float, help="lightness blur multiplier (> 1)")
    p.add_argument("--config", type=Path, help="key = value config file")
    p.add_argument("--metrics", action="store_true", help="compute UCIQE/UIQM before/after")
    p.add_argument("--dump-stages", type=Path, metavar="DIR",
                   help="dump intermediate stages as 16-bit PNGs")


def _build_parser() -> _Parser:
    parser = _Parser(prog="uwcolor", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_correct = sub.add_parser("correct", help="correct a single image")
    p_correct.add_argument("input", type=Path)
    p_correct.add_argument("output", type=Path)
    _add_pipeline_flags(p_correct)

    p_batch = sub.add_parser("batch", help="correct every image in a directory")
    p_batch.add_argument("input_dir", type=Path)
    p_batch.add_argument("output_dir", type=Path)
    _add_pipeline_flags(p_batch)
    p_batch.add_argument("--jobs", type=int, default=1, help="parallel workers")

    p_gamut = sub.add_parser("gamut", help="gamut table maintenance")
    gamut_sub = p_gamut.add_subparsers(dest="gamut_command", required=True)
    p_build = gamut_sub.add_parser("build", help="build and cache the gamut table")
    p_build.add_argument("--samples", type=int, default=500_000)
    p_build.add_argument("--seed", type=int, default=42)
    p_build.add_argument("--cache", type=Path, default=None)

    p_score = sub.add_parser("score", help="print quality metrics for an image")
    p_score.add_argument("image", type=Path)

    return parser


def _resolve_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig()
    if args.config is not None:
        try:
            text = args.config.read_text()
        except OSError as exc:
            raise _IOFailure(f"cannot read config file: {exc}") from exc
        cfg = PipelineConfig.from_text(text)  # ValueError -> usage error
    overrides = {}
    for name in ("eta", "beta", "lam", "sigma0", "n"):
        value = getattr(args, name, None)
        if value is not None:
            overrides[name] = value
    if getattr(args, "metrics", False):
        overrides["emit_metrics"] = True
    if getattr(args, "dump_stages", None) is not None:
        overrides["emit_intermediates"] = True
    return replace(cfg, **overrides)


class _IOFailure(RuntimeError):
    pass


def _cmd_correct(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    table = cached_gamut_table(cfg.gamut_samples, cfg.gamut_seed)
    try:
        img = load_rgb(args.input)
    except OSError as exc:
        print(f"uwcolor: cannot read {args.input}: {exc}", file=sys.stderr)
        return EXIT_IO
    result = correct_image(img, cfg, table, stage_dir=args.dump_stages)
    try:
        args.output.parent.mkdir(parents=True, exist_ok=True)
        save_rgb(result.rgb, args.output)
    except OSError as exc:
        print(f"uwcolor: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_IO
    if cfg.emit_metrics:
        report = {
            "file": args.input.name,
            "uciqe_before": result.report_before.uciqe,
            "uciqe_after": result.report_after.uciqe,
            "uiqm_before": result.report_before.uiqm,
            "uiqm_after": result.report_after.uiqm,
            "sigma0_used": result.sigma0_used,
            "config": cfg.to_dict(),
        }
        report_path = args.output.with_name(args.output.name + ".report.json")
        report_path.write_text(json.dumps(report, indent=2) + "\n")
        print(json.dumps(report, indent=2))
    return EXIT_OK


def _cmd_batch(args: argparse.Namespace, cfg: PipelineConfig) -> int:
    if not args.input_dir.is_dir():
        print(f"uwcolor: input directory not found: {args.input_dir}", file=sys.stderr)
        return EXIT_IO
    table = cached_gamut_table(cfg.gamut_samples, cfg.gamut_seed)
    try:
        report = run_batch(args.input_dir, args.output_dir, cfg,
                           table=table, jobs=args.jobs)
    except (FileNotFoundError, ValueError) as exc:
        print(f"uwcolor: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"processed {len(report.images)} image(s), "
          f"skipped {len(report.skipped)}; report at {report.report_path}")
    return EXIT_OK


def _cmd_gamut_build(args: argparse.Namespace) -> int:
    table = build_gamut_table(args.samples, args.seed)
    path = args.cache if args.cache is not None else default_cache_path()
    save_gamut_table(table, path)
    degenerate = sum(1 for sl in table.slices if sl is None)
    print(f"gamut table: {args.samples} samples, seed {args.seed}, "
          f"{degenerate} degenerate slice(s); cached at {path}")
    return EXIT_OK


def _cmd_score(args: argparse.Namespace) -> int:
    try:
        img = load_rgb(args.image)
    except OSError as exc:
        print(f"uwcolor: cannot read {args.image}: {exc}", file=sys.stderr)
        return EXIT_IO
    report = score_image(img)
    print(json.dumps({"file": args.image.name, **report.to_dict()}, indent=2))
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(message)s")
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command in ("correct", "batch"):
        # Config resolution failures are usage errors (1), except an
        # unreadable config file, which is an I/O error (2).
        try:
            cfg = _resolve_config(args)
        except _IOFailure as exc:
            print(f"uwcolor: {exc}", file=sys.stderr)
            return EXIT_IO
        except ValueError as exc:
            print(f"uwcolor: {exc}", file=sys.stderr)
            return EXIT_USAGE

    try:
        if args.command == "correct":
            return _cmd_correct(args, cfg)
        if args.command == "batch":
            return _cmd_batch(args, cfg)
        if args.command == "gamut":
            return _cmd_gamut_build(args)
        if args.command == "score":
            return _cmd_score(args)
        parser.error(f"unknown command {args.command!r}")
    except OSError as exc:
        print(f"uwcolor: {exc}", file=sys.stderr)
        return EXIT_IO
    except Exception as exc:
        print(f"uwcolor: processing failed: {exc}", file=sys.stderr)
        return EXIT_PROCESSING
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
