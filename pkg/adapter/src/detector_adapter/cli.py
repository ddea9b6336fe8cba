"""adapter CLI: pretrained-detector inference and ground-truth export."""

from __future__ import annotations

import argparse
import sys

from .config import AdapterConfig, ModelName, ResizeMode
from .export import ExportFormatError, export_ground_truth
from .inference import run_inference
from .models import ModelLoadError

EXIT_INPUT_ERROR = 2
EXIT_MODEL_ERROR = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adapter",
        description="Run a pretrained multilabel detector (or export ground truth) "
        "into the detections JSONL consumed by coocmine ingest.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="detect over an image directory")
    p.add_argument("--model", required=True,
                   choices=[m.value for m in ModelName])
    p.add_argument("--images", required=True, help="directory of images")
    p.add_argument("--out", required=True, help="output JSONL file")
    p.add_argument("--resize-224", action="store_true",
                   help="resize inputs to 224x224 before inference; boxes are "
                        "reported in that frame (degrades small-object boxes)")
    p.add_argument("--score-floor", type=float, default=0.0,
                   help="drop detections below this score (default 0.0)")
    p.add_argument("--device", default="cpu")
    p.add_argument("--batch-size", type=int, default=4)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("export-gt", help="emit COCO ground truth as score-1.0 detections")
    p.add_argument("--ann", required=True, help="COCO annotation JSON")
    p.add_argument("--out", required=True, help="output JSONL file")
    p.set_defaults(func=_cmd_export)

    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = AdapterConfig(
        model=ModelName(args.model),
        device=args.device,
        batch_size=args.batch_size,
        resize_mode=ResizeMode.SQUARE_224 if args.resize_224 else ResizeMode.NATIVE,
        score_floor=args.score_floor,
    )
    written = run_inference(args.images, cfg, args.out)
    print(f"wrote {written} lines to {args.out}")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    written = export_ground_truth(args.ann, args.out)
    print(f"wrote {written} lines to {args.out}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ModelLoadError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MODEL_ERROR
    except (ExportFormatError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
