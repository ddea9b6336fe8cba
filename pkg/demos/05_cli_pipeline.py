#!/usr/bin/env python3
# The full two-stage pipeline through the CLI.
#
# Stage 1 output (here: ground-truth annotations standing in for a detector)
# is ingested into a labels-only transactions artifact; stage 2 mines it and
# reports base classes, the co-occurrence matrix, and chart data. Every output
# file is byte-deterministic.

import json
import random
import subprocess
import sys
import tempfile
from pathlib import Path

rng = random.Random(1)
classes = ["person", "car", "dog", "bicycle", "bench"]

images, annotations = [], []
for i in range(80):
    images.append({"id": i, "width": 640, "height": 480})
    present = {rng.randrange(len(classes))}
    if rng.random() < 0.7:
        present.add(0)
    if rng.random() < 0.35:
        present.add(rng.randrange(len(classes)))
    for c in sorted(present):
        annotations.append({
            "image_id": i,
            "category_id": c + 1,
            "bbox": [rng.uniform(0, 500), rng.uniform(0, 350), 40, 60],
        })

coco = {
    "images": images,
    "annotations": annotations,
    "categories": [{"id": c + 1, "name": name} for c, name in enumerate(classes)],
}

workdir = Path(tempfile.mkdtemp(prefix="coocmine-demo-"))
gt_path = workdir / "annotations.json"
gt_path.write_text(json.dumps(coco))
print(f"wrote synthetic annotations for {len(images)} images to {gt_path}\n")


def run(*args):
    cmd = [sys.executable, "-m", "coocmine.cli", *args]
    print("$", "coocmine", *args)
    subprocess.run(cmd, check=True)
    print()


run("ingest", str(gt_path), "--format", "coco", "--out", str(workdir))
run("mine", str(workdir / "transactions.jsonl"), "--rules", "--out", str(workdir),
    "--min-support", "0.3")
run("analyze", str(workdir / "transactions.jsonl"), "--top-k", "4",
    "--cooccur-threshold", "0.4", "--out", str(workdir))

for name in ("frequent_itemsets.csv", "base_classes.csv", "fig2_data.csv", "fig3_data.csv"):
    print(f"--- {name} ---")
    print((workdir / name).read_text())
