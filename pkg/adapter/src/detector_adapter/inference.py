"""Batched inference over an image directory, written as detections JSONL."""

from __future__ import annotations

import logging
from pathlib import Path

from .config import AdapterConfig, ResizeMode
from .jsonl import detection_line, write_line
from .models import Detector, load_detector

logger = logging.getLogger(__name__)

IMAGE_SUFFIXES = (".jpg", ".jpeg", ".png", ".bmp", ".webp")


def list_images(image_dir: str | Path) -> list[Path]:
    """Image files in the directory, in sorted-name order (the enumeration
    and output order)."""
    image_dir = Path(image_dir)
    if not image_dir.is_dir():
        raise NotADirectoryError(f"not a directory: {image_dir}")
    return sorted(
        p for p in image_dir.iterdir()
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )


def _load(path: Path, resize_mode: ResizeMode):
    from PIL import Image

    try:
        with Image.open(path) as img:
            img = img.convert("RGB")
    except Exception as e:
        logger.warning("skipping undecodable image %s: %s", path.name, e)
        return None
    if resize_mode is ResizeMode.SQUARE_224:
        img = img.resize((224, 224))
    return img


def run_inference(
    image_dir: str | Path,
    cfg: AdapterConfig,
    out_path: str | Path,
    detector: Detector | None = None,
) -> int:
    """Detect over every decodable image and write one JSONL line per image.

    Boxes are reported in the frame the model saw: the native size, or
    224x224 when the resize option is on. Detections below the score floor
    are dropped. Returns the number of lines written.
    """
    paths = list_images(image_dir)
    stems = [p.stem for p in paths]
    if len(set(stems)) != len(stems):
        raise ValueError("duplicate image stems would collide as image_ids")
    if detector is None:
        detector = load_detector(cfg)

    written = 0
    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        batch_paths: list[Path] = []
        batch_images: list = []

        def flush():
            nonlocal written
            if not batch_images:
                return
            predictions_per_image = detector.predict(batch_images)
            for path, img, predictions in zip(batch_paths, batch_images, predictions_per_image):
                kept = [p for p in predictions if p.score >= cfg.score_floor]
                write_line(
                    f, detection_line(path.stem, kept, width=img.width, height=img.height)
                )
                written += 1
            batch_paths.clear()
            batch_images.clear()

        for path in paths:
            img = _load(path, cfg.resize_mode)
            if img is None:
                continue
            batch_paths.append(path)
            batch_images.append(img)
            if len(batch_images) >= cfg.batch_size:
                flush()
        flush()
    return written
