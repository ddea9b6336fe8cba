#!/usr/bin/env python3
# Scoring detector output: IoU matching, precision-recall, AP and mAP.

from coocmine import (
    Detection,
    DetectionRecord,
    EvalConfig,
    GroundTruthBox,
    Interpolation,
    Vocabulary,
    average_precision,
    evaluate_detections,
    iou,
    match_detections,
)

print("IoU of (0,0,10,10) vs (5,0,10,10):", round(iou((0, 0, 10, 10), (5, 0, 10, 10)), 4))

vocab = Vocabulary.from_names(["person", "dog"])
cfg = EvalConfig(iou_threshold=0.5)

# One image, two person ground truths. The detector finds the first box with
# high confidence, hallucinates one in the corner, then finds the second box.
gts = [
    GroundTruthBox("img1", 0, (10, 10, 50, 80)),
    GroundTruthBox("img1", 0, (200, 40, 45, 90)),
]
records = [
    DetectionRecord("img1", 640, 480, (
        Detection("person", 0.95, (12, 11, 48, 78)),
        Detection("person", 0.80, (500, 400, 30, 30)),
        Detection("person", 0.70, (198, 42, 50, 88)),
    )),
]

matches = match_detections(records, gts, vocab, cfg)
print("\nranked person detections (score, matched?):")
for score, is_tp in matches.per_class[0]:
    print(f"  {score:.2f} -> {'TP' if is_tp else 'FP'}")

result = average_precision(matches.per_class[0], matches.num_gt[0], cfg)
print("\nprecision-recall points:")
for recall, precision in result.pr_points:
    print(f"  recall={recall:.2f} precision={precision:.3f}")
print(f"all-point AP: {result.ap:.4f} (= 5/6 for the TP, FP, TP ranking)")

eleven = EvalConfig(iou_threshold=0.5, interpolation=Interpolation.ELEVEN_POINT)
alt = average_precision(matches.per_class[0], matches.num_gt[0], eleven)
print(f"eleven-point AP of the same ranking: {alt.ap:.4f}")

# mAP averages per-class AP over classes that have ground truth. The dog
# detector below misses everything, dragging the mean down.
gts_two_classes = gts + [GroundTruthBox("img1", 1, (300, 300, 40, 40))]
full = evaluate_detections(records, gts_two_classes, vocab, cfg)
print(f"\nper-class AP: " + ", ".join(
    f"{vocab.name_of(r.class_id)}={r.ap:.3f}" for r in full.per_class))
print(f"mAP over {full.num_classes} classes: {full.map:.4f}")
