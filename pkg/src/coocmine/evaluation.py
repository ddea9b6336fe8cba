"""Detection-quality metrics: IoU, greedy matching, per-class AP, and mAP.

Boxes are (x, y, w, h) in pixels, x/y top-left. Matching is the standard
greedy protocol: per class, detections in descending score order each claim
the unmatched same-image ground truth with the highest IoU at or above the
threshold. mAP is the arithmetic mean of per-class AP over classes that have
at least one ground-truth box.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Sequence

from .errors import NoEvaluableClassesError, UnknownClassError
from .model import Vocabulary

if TYPE_CHECKING:
    from .ingest import DetectionRecord

Bbox = tuple[float, float, float, float]


class Interpolation(enum.Enum):
    ALL_POINT = "all"
    ELEVEN_POINT = "11pt"


@dataclass(frozen=True)
class EvalConfig:
    iou_threshold: float = 0.5
    interpolation: Interpolation = Interpolation.ALL_POINT

    def __post_init__(self):
        if not 0.0 < self.iou_threshold < 1.0:
            raise ValueError(f"iou_threshold must be in (0, 1), got {self.iou_threshold}")


@dataclass(frozen=True)
class GroundTruthBox:
    image_id: str
    class_id: int
    bbox: Bbox

    def __post_init__(self):
        if self.bbox[2] <= 0 or self.bbox[3] <= 0:
            raise ValueError(f"ground-truth box must have positive size, got {self.bbox}")


@dataclass(frozen=True)
class ApResult:
    class_id: int
    ap: float
    pr_points: tuple[tuple[float, float], ...]
    num_gt: int


@dataclass(frozen=True)
class MapResult:
    per_class: tuple[ApResult, ...]
    map: float
    num_classes: int


@dataclass(frozen=True)
class MatchResult:
    """Per-class (score, is_true_positive) lists in descending score order,
    plus ground-truth counts per class."""

    per_class: dict[int, list[tuple[float, bool]]]
    num_gt: dict[int, int]


def iou(a: Bbox, b: Bbox) -> float:
    """Intersection over union of two (x, y, w, h) boxes; 0 when disjoint."""
    if a[2] <= 0 or a[3] <= 0 or b[2] <= 0 or b[3] <= 0:
        raise ValueError("boxes must have positive width and height")
    ax1, ay1, ax2, ay2 = a[0], a[1], a[0] + a[2], a[1] + a[3]
    bx1, by1, bx2, by2 = b[0], b[1], b[0] + b[2], b[1] + b[3]
    ix1, iy1 = max(ax1, bx1), max(ay1, by1)
    ix2, iy2 = min(ax2, bx2), min(ay2, by2)
    if ix2 <= ix1 or iy2 <= iy1:
        return 0.0
    inter = (ix2 - ix1) * (iy2 - iy1)
    union = a[2] * a[3] + b[2] * b[3] - inter
    return inter / union


def match_detections(
    records: Iterable["DetectionRecord"],
    gts: Sequence[GroundTruthBox],
    vocabulary: Vocabulary,
    cfg: EvalConfig,
) -> MatchResult:
    """Label every detection TP or FP under the greedy matching protocol.

    Score ties are broken by input order; each ground truth is claimed at
    most once.
    """
    gt_by_key: dict[tuple[str, int], list[GroundTruthBox]] = {}
    num_gt: dict[int, int] = {}
    for gt in gts:
        gt_by_key.setdefault((gt.image_id, gt.class_id), []).append(gt)
        num_gt[gt.class_id] = num_gt.get(gt.class_id, 0) + 1

    # (class_id -> detections in input order)
    dets: dict[int, list[tuple[float, str, Bbox]]] = {}
    for record in records:
        for det in record.detections:
            if det.bbox is None:
                raise ValueError(
                    f"detection without a bbox cannot be evaluated (image {record.image_id!r})"
                )
            try:
                class_id = vocabulary.id_of(det.category)
            except UnknownClassError:
                raise UnknownClassError(
                    f"detection category {det.category!r} is not in the ground-truth vocabulary"
                ) from None
            dets.setdefault(class_id, []).append((det.score, record.image_id, det.bbox))

    per_class: dict[int, list[tuple[float, bool]]] = {}
    used: dict[tuple[str, int], set[int]] = {}
    for class_id, class_dets in dets.items():
        order = sorted(range(len(class_dets)), key=lambda i: (-class_dets[i][0], i))
        labeled: list[tuple[float, bool]] = []
        for i in order:
            score, image_id, bbox = class_dets[i]
            key = (image_id, class_id)
            candidates = gt_by_key.get(key, [])
            used_idx = used.setdefault(key, set())
            best, best_iou = -1, 0.0
            for j, gt in enumerate(candidates):
                if j in used_idx:
                    continue
                overlap = iou(bbox, gt.bbox)
                if overlap >= cfg.iou_threshold and overlap > best_iou:
                    best, best_iou = j, overlap
            if best >= 0:
                used_idx.add(best)
                labeled.append((score, True))
            else:
                labeled.append((score, False))
        per_class[class_id] = labeled
    return MatchResult(per_class, num_gt)


def average_precision(
    labeled: Sequence[tuple[float, bool]],
    num_gt: int,
    cfg: EvalConfig,
    class_id: int = 0,
) -> ApResult:
    """AP for one class from its (score, is_tp) list in ranked order."""
    if num_gt < 1:
        raise ValueError("num_gt must be >= 1; exclude classes without ground truth")

    precisions: list[float] = []
    pr_points: list[tuple[float, float]] = []
    tp = 0
    for i, (_, is_tp) in enumerate(labeled):
        if is_tp:
            tp += 1
        precision = tp / (i + 1)
        precisions.append(precision)
        pr_points.append((tp / num_gt, precision))

    if cfg.interpolation is Interpolation.ELEVEN_POINT:
        ap = _eleven_point_ap(pr_points)
    else:
        ap = _all_point_ap(labeled, precisions, num_gt)
    return ApResult(class_id, ap, tuple(pr_points), num_gt)


def _all_point_ap(
    labeled: Sequence[tuple[float, bool]], precisions: Sequence[float], num_gt: int
) -> float:
    # Area under the precision envelope. Each true positive advances recall by
    # exactly 1/num_gt, so summing the envelope precision at every TP and
    # dividing once keeps a perfect ranking at exactly 1.0.
    envelope = list(precisions)
    for i in range(len(envelope) - 2, -1, -1):
        envelope[i] = max(envelope[i], envelope[i + 1])
    total = sum(envelope[i] for i, (_, is_tp) in enumerate(labeled) if is_tp)
    return total / num_gt


def _eleven_point_ap(pr_points: Sequence[tuple[float, float]]) -> float:
    total = 0.0
    for level in range(11):
        r = level / 10
        best = max((p for rec, p in pr_points if rec >= r), default=0.0)
        total += best
    return total / 11


def mean_average_precision(per_class: Sequence[ApResult]) -> MapResult:
    """Arithmetic mean of AP over the supplied classes (all with num_gt >= 1)."""
    if any(r.num_gt < 1 for r in per_class):
        raise ValueError("per-class results must all have num_gt >= 1")
    results = tuple(sorted(per_class, key=lambda r: r.class_id))
    if not results:
        raise NoEvaluableClassesError("no class has any ground-truth box")
    mean = sum(r.ap for r in results) / len(results)
    return MapResult(results, mean, len(results))


def evaluate_detections(
    records: Iterable["DetectionRecord"],
    gts: Sequence[GroundTruthBox],
    vocabulary: Vocabulary,
    cfg: EvalConfig,
) -> MapResult:
    """Match, score per class, and average: the full evaluation in one call.

    Classes with ground truth but no detections score AP 0; classes with
    detections but no ground truth are excluded from the mean.
    """
    matches = match_detections(records, gts, vocabulary, cfg)
    per_class = [
        average_precision(matches.per_class.get(class_id, []), count, cfg, class_id)
        for class_id, count in sorted(matches.num_gt.items())
        if count >= 1
    ]
    return mean_average_precision(per_class)
