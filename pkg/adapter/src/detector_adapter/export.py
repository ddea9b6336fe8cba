"""Export COCO ground truth as score-1.0 detections.

Lets the downstream pipeline run without any model: the emitted JSONL is
oracle-grade stage-1 output, and evaluating it against its own source file
must score a perfect mAP.
"""

from __future__ import annotations

import json
from pathlib import Path

from .jsonl import Prediction, detection_line, write_line


class ExportFormatError(Exception):
    """The annotation file violates the COCO layout this exporter reads."""


def _load_coco(path: str | Path) -> dict:
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise ExportFormatError(f"{path.name}: invalid JSON: {e.msg}") from None
    for key in ("images", "annotations", "categories"):
        if not isinstance(data.get(key), list):
            raise ExportFormatError(f"{path.name}: missing required array {key!r}")
    return data


def export_ground_truth(ann_path: str | Path, out_path: str | Path) -> int:
    """Write one JSONL line per image in the annotation file's image order.

    Every annotation becomes a detection with score 1.0; images without
    annotations get an empty detections array. Returns the line count.
    """
    data = _load_coco(ann_path)
    names = {}
    for cat in data["categories"]:
        if "id" not in cat or "name" not in cat:
            raise ExportFormatError(f"category entries need id and name, got {cat!r}")
        names[cat["id"]] = cat["name"]

    per_image: dict[str, list[Prediction]] = {}
    dims: dict[str, tuple[int | None, int | None]] = {}
    order: list[str] = []
    for img in data["images"]:
        if "id" not in img:
            raise ExportFormatError(f"image entries need an id, got {img!r}")
        image_id = str(img["id"])
        if image_id in per_image:
            raise ExportFormatError(f"duplicate image id: {image_id}")
        per_image[image_id] = []
        dims[image_id] = (img.get("width"), img.get("height"))
        order.append(image_id)

    for ann in data["annotations"]:
        image_id = str(ann.get("image_id"))
        if image_id not in per_image:
            raise ExportFormatError(f"annotation references unknown image id {image_id}")
        if ann.get("category_id") not in names:
            raise ExportFormatError(
                f"annotation references unknown category id {ann.get('category_id')}"
            )
        bbox = ann.get("bbox")
        if (
            not isinstance(bbox, list) or len(bbox) != 4
            or bbox[2] <= 0 or bbox[3] <= 0
        ):
            raise ExportFormatError(f"annotation for image {image_id} has a bad bbox: {bbox!r}")
        per_image[image_id].append(
            Prediction(names[ann["category_id"]], 1.0, tuple(float(v) for v in bbox))
        )

    with open(out_path, "w", encoding="utf-8", newline="\n") as f:
        for image_id in order:
            width, height = dims[image_id]
            write_line(f, detection_line(image_id, per_image[image_id], width, height))
    return len(order)
