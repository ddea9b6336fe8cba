"""Parse detection/annotation files into transactions and evaluation records.

Two input formats are supported:

* Detections JSONL, one object per line:
  ``{"image_id": "...", "width": W, "height": H,
  "detections": [{"category": "...", "score": S, "bbox": [x, y, w, h]}]}``.
  ``width``/``height`` and per-detection ``bbox`` may be omitted (the
  transactions artifact written by the CLI carries labels only).
* COCO annotation JSON, of which only the ``images`` (id), ``annotations``
  (image_id, category_id, bbox) and ``categories`` (id, name) fields are read.

Mining consumes labels only; boxes are retained solely for evaluation.
"""

from __future__ import annotations

import enum
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

from .errors import (
    EmptyDatabaseError,
    FormatError,
    ParseError,
    ReferentialIntegrityError,
)
from .evaluation import Bbox, GroundTruthBox
from .model import Transaction, TransactionDb, Vocabulary

logger = logging.getLogger(__name__)

DEFAULT_SCORE_THRESHOLD = 0.5


class VocabularySource(enum.Enum):
    FROM_FILE = "from-file"
    FROM_COCO_CATEGORIES = "from-coco-categories"


@dataclass(frozen=True)
class IngestConfig:
    score_threshold: float = DEFAULT_SCORE_THRESHOLD
    vocabulary_source: VocabularySource = VocabularySource.FROM_FILE
    # COCO file whose categories define the vocabulary (FROM_COCO_CATEGORIES).
    categories_path: str | None = None

    def __post_init__(self):
        if not 0.0 <= self.score_threshold <= 1.0:
            raise ValueError(
                f"score_threshold must be in [0, 1], got {self.score_threshold}"
            )


@dataclass(frozen=True)
class Detection:
    category: str
    score: float
    bbox: Bbox | None = None


@dataclass(frozen=True)
class DetectionRecord:
    image_id: str
    width: int | None
    height: int | None
    detections: tuple[Detection, ...]


def _require(condition: bool, message: str, line_number: int | None = None):
    if not condition:
        raise ParseError(message, line_number)


def _parse_bbox(raw, line_number: int | None) -> Bbox:
    _require(
        isinstance(raw, (list, tuple)) and len(raw) == 4
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw),
        f"bbox must be a list of four numbers, got {raw!r}",
        line_number,
    )
    x, y, w, h = (float(v) for v in raw)
    _require(w > 0 and h > 0, f"bbox must have positive width and height, got {raw!r}", line_number)
    return (x, y, w, h)


def _parse_record(obj, line_number: int) -> DetectionRecord:
    _require(isinstance(obj, dict), "each line must be a JSON object", line_number)
    image_id = obj.get("image_id")
    _require(
        isinstance(image_id, str) and image_id != "",
        "image_id must be a non-empty string",
        line_number,
    )
    dims = []
    for key in ("width", "height"):
        value = obj.get(key)
        if value is not None:
            _require(
                isinstance(value, int) and not isinstance(value, bool) and value > 0,
                f"{key} must be a positive integer, got {value!r}",
                line_number,
            )
        dims.append(value)
    raw_dets = obj.get("detections")
    _require(isinstance(raw_dets, list), "detections must be a list", line_number)
    detections = []
    for raw in raw_dets:
        _require(isinstance(raw, dict), "each detection must be a JSON object", line_number)
        category = raw.get("category")
        _require(
            isinstance(category, str) and category != "",
            "category must be a non-empty string",
            line_number,
        )
        score = raw.get("score")
        _require(
            isinstance(score, (int, float)) and not isinstance(score, bool)
            and 0.0 <= score <= 1.0,
            f"score must be a number in [0, 1], got {score!r}",
            line_number,
        )
        bbox = None
        if raw.get("bbox") is not None:
            bbox = _parse_bbox(raw["bbox"], line_number)
        detections.append(Detection(category, float(score), bbox))
    return DetectionRecord(image_id, dims[0], dims[1], tuple(detections))


def read_detections_jsonl(
    path: str | Path, cfg: IngestConfig = IngestConfig()
) -> tuple[TransactionDb, list[DetectionRecord]]:
    """Read a detections JSONL file into a TransactionDb plus full records.

    Detections below the score threshold are dropped from the transactions
    (images left without labels are excluded with a warning); the returned
    records keep every parsed detection for evaluation.
    """
    path = Path(path)
    records: list[DetectionRecord] = []
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON: {e.msg}", line_number) from None
            records.append(_parse_record(obj, line_number))
    if not records:
        raise EmptyDatabaseError(f"no records in {path}")

    if cfg.vocabulary_source is VocabularySource.FROM_COCO_CATEGORIES:
        if cfg.categories_path is None:
            raise ValueError("categories_path is required with FROM_COCO_CATEGORIES")
        vocabulary = read_coco_vocabulary(cfg.categories_path)
    else:
        names = sorted({d.category for r in records for d in r.detections})
        if not names:
            raise EmptyDatabaseError(f"no detections in {path}; cannot derive a vocabulary")
        vocabulary = Vocabulary.from_names(names)

    transactions: list[Transaction] = []
    seen: set[str] = set()
    excluded = 0
    for record in records:
        if record.image_id in seen:
            raise FormatError(f"duplicate image_id: {record.image_id!r}")
        seen.add(record.image_id)
        labels = set()
        for det in record.detections:
            class_id = vocabulary.id_of(det.category)  # raises UnknownClassError
            if det.score >= cfg.score_threshold:
                labels.add(class_id)
        if not labels:
            excluded += 1
            logger.warning(
                "image %s has no detections at score >= %s; excluded",
                record.image_id,
                cfg.score_threshold,
            )
            continue
        transactions.append(Transaction(record.image_id, tuple(sorted(labels))))
    if excluded:
        logger.info("excluded %d of %d images with empty label sets", excluded, len(records))

    db = TransactionDb(vocabulary, tuple(transactions), source_tag=f"jsonl:{path.name}")
    return db, records


def write_detections_jsonl(records: Iterable[DetectionRecord], path: str | Path) -> None:
    """Serialize records to the detections JSONL schema, byte-deterministically."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for record in records:
            obj: dict = {"image_id": record.image_id}
            if record.width is not None:
                obj["width"] = record.width
            if record.height is not None:
                obj["height"] = record.height
            dets = []
            for det in record.detections:
                d: dict = {"category": det.category, "score": det.score}
                if det.bbox is not None:
                    d["bbox"] = list(det.bbox)
                dets.append(d)
            obj["detections"] = dets
            f.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n")


def write_transactions_jsonl(db: TransactionDb, path: str | Path) -> None:
    """Write the labels-only transactions artifact (scores pinned to 1.0)."""
    records = [
        DetectionRecord(
            t.image_id,
            None,
            None,
            tuple(Detection(db.vocabulary.name_of(c), 1.0) for c in t.labels),
        )
        for t in db.transactions
    ]
    write_detections_jsonl(records, path)


def _load_coco(path: str | Path) -> dict:
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path.name}: invalid JSON: {e.msg}") from None
    if not isinstance(data, dict):
        raise FormatError(f"{path.name}: top level must be a JSON object")
    for key in ("images", "annotations", "categories"):
        if not isinstance(data.get(key), list):
            raise FormatError(f"{path.name}: missing required array {key!r}")
    return data


def _category_map(data: dict) -> tuple[Vocabulary, dict[int, int]]:
    """Vocabulary in original-id order plus original-id -> contiguous-id map."""
    cats = []
    for raw in data["categories"]:
        if not isinstance(raw, dict) or "id" not in raw or "name" not in raw:
            raise FormatError(f"category entries need id and name, got {raw!r}")
        if not isinstance(raw["name"], str) or not raw["name"]:
            raise FormatError(f"category name must be a non-empty string, got {raw!r}")
        cats.append((raw["id"], raw["name"]))
    ids = [c[0] for c in cats]
    if len(set(ids)) != len(ids):
        raise FormatError("duplicate category ids")
    cats.sort(key=lambda c: c[0])
    try:
        vocabulary = Vocabulary.from_names(name for _, name in cats)
    except ValueError as e:
        raise FormatError(str(e)) from None
    remap = {orig: i for i, (orig, _) in enumerate(cats)}
    return vocabulary, remap


def read_coco_vocabulary(path: str | Path) -> Vocabulary:
    """Vocabulary from a COCO file's categories, remapped to contiguous ids."""
    vocabulary, _ = _category_map(_load_coco(path))
    return vocabulary


def read_coco_ground_truth(path: str | Path) -> TransactionDb:
    """One transaction per annotated image in a COCO annotation file.

    Images with zero annotations are excluded (a counter is logged); the
    vocabulary covers every category, annotated or not.
    """
    path = Path(path)
    data = _load_coco(path)
    vocabulary, remap = _category_map(data)

    image_ids: list[str] = []
    known: set[str] = set()
    for raw in data["images"]:
        if not isinstance(raw, dict) or "id" not in raw:
            raise FormatError(f"image entries need an id, got {raw!r}")
        image_id = str(raw["id"])
        if image_id in known:
            raise FormatError(f"duplicate image id: {image_id}")
        known.add(image_id)
        image_ids.append(image_id)

    labels: dict[str, set[int]] = {}
    for raw in data["annotations"]:
        image_id, class_id = _check_annotation_refs(raw, known, remap)
        labels.setdefault(image_id, set()).add(class_id)

    transactions = []
    for image_id in image_ids:
        if image_id in labels:
            transactions.append(Transaction(image_id, tuple(sorted(labels[image_id]))))
    excluded = len(image_ids) - len(transactions)
    if excluded:
        logger.info("excluded %d of %d images with zero annotations", excluded, len(image_ids))
    return TransactionDb(vocabulary, tuple(transactions), source_tag=f"coco:{path.name}")


def _check_annotation_refs(raw, known_images: set[str], remap: dict[int, int]) -> tuple[str, int]:
    if not isinstance(raw, dict) or "image_id" not in raw or "category_id" not in raw:
        raise FormatError(f"annotation entries need image_id and category_id, got {raw!r}")
    image_id = str(raw["image_id"])
    if image_id not in known_images:
        raise ReferentialIntegrityError(f"annotation references unknown image id {image_id}")
    if raw["category_id"] not in remap:
        raise ReferentialIntegrityError(
            f"annotation references unknown category id {raw['category_id']}"
        )
    return image_id, remap[raw["category_id"]]


def read_ground_truth_boxes(path: str | Path) -> list[GroundTruthBox]:
    """One GroundTruthBox per annotation, with the remapped contiguous class id."""
    data = _load_coco(path)
    _, remap = _category_map(data)
    known = {str(raw["id"]) for raw in data["images"] if isinstance(raw, dict) and "id" in raw}

    boxes = []
    for raw in data["annotations"]:
        image_id, class_id = _check_annotation_refs(raw, known, remap)
        if "bbox" not in raw:
            raise FormatError(f"annotation for image {image_id} has no bbox")
        try:
            bbox = _parse_bbox(raw["bbox"], None)
        except ParseError as e:
            raise FormatError(str(e)) from None
        boxes.append(GroundTruthBox(image_id, class_id, bbox))
    return boxes
