"""Detections JSONL emission.

One JSON object per line, byte-compatible with the schema the coocmine
`ingest` command reads:

    {"image_id":"<text>","width":<int>,"height":<int>,
     "detections":[{"category":"<text>","score":<real>,"bbox":[x,y,w,h]}]}
"""

from __future__ import annotations

import json
from typing import IO, NamedTuple, Sequence


class Prediction(NamedTuple):
    category: str
    score: float
    bbox: tuple[float, float, float, float]  # x, y, w, h; w > 0, h > 0


def detection_line(
    image_id: str,
    predictions: Sequence[Prediction],
    width: int | None = None,
    height: int | None = None,
) -> str:
    obj: dict = {"image_id": image_id}
    if width is not None:
        obj["width"] = int(width)
    if height is not None:
        obj["height"] = int(height)
    obj["detections"] = [
        {
            "category": p.category,
            "score": min(max(float(p.score), 0.0), 1.0),
            "bbox": [float(v) for v in p.bbox],
        }
        for p in predictions
    ]
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_line(f: IO[str], line: str) -> None:
    f.write(line + "\n")
