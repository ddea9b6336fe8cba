"""Byte-deterministic CSV/JSON report emission.

All real-valued columns are written with six decimal places, rounded half-up,
and every writer emits rows in a canonical order, so identical inputs always
produce identical bytes.
"""

from __future__ import annotations

import csv
import json
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Sequence

from .cooccurrence import BaseClassReport, CooccurrenceMatrix
from .evaluation import MapResult
from .mining import AssociationRule, FrequentItemset
from .model import Itemset, Vocabulary


def format_fraction(x: float) -> str:
    """Six decimal places, half-up rounding, on the exact binary value."""
    return str(Decimal(x).quantize(Decimal("0.000001"), rounding=ROUND_HALF_UP))


def _names(itemset: Itemset, vocabulary: Vocabulary) -> str:
    return "|".join(vocabulary.name_of(c) for c in itemset)


def _open_csv(path: str | Path):
    return open(path, "w", encoding="utf-8", newline="")


def write_frequent_itemsets_csv(
    path: str | Path, itemsets: Sequence[FrequentItemset], vocabulary: Vocabulary
) -> None:
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["itemset", "size", "support", "count"])
        for fi in itemsets:
            writer.writerow(
                [_names(fi.itemset, vocabulary), len(fi.itemset),
                 format_fraction(fi.support), fi.count]
            )


def write_rules_csv(
    path: str | Path, rules: Sequence[AssociationRule], vocabulary: Vocabulary
) -> None:
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["antecedent", "consequent", "support", "confidence", "lift"])
        for rule in rules:
            writer.writerow(
                [_names(rule.antecedent, vocabulary), _names(rule.consequent, vocabulary),
                 format_fraction(rule.support), format_fraction(rule.confidence),
                 format_fraction(rule.lift)]
            )


def write_base_classes_csv(
    path: str | Path, report: BaseClassReport, vocabulary: Vocabulary
) -> None:
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["class", "image_count", "image_frequency"])
        for entry in report.entries:
            writer.writerow(
                [vocabulary.name_of(entry.class_id), entry.image_count,
                 format_fraction(entry.image_frequency)]
            )


def write_matrix_csv(path: str | Path, matrix: CooccurrenceMatrix) -> None:
    """(n+1) x (n+1) grid: header row/column of class names around the counts."""
    names = matrix.vocabulary_names
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow([""] + list(names))
        for i, name in enumerate(names):
            writer.writerow([name] + [int(v) for v in matrix.counts[i]])


def write_cooccurrence_counts_csv(
    path: str | Path, rows: Sequence[tuple[int, int]], vocabulary: Vocabulary
) -> None:
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["base_class", "num_cooccurring"])
        for base, count in rows:
            writer.writerow([vocabulary.name_of(base), count])


def write_size_histogram_csv(path: str | Path, histogram: Sequence[tuple[int, int]]) -> None:
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["itemset_size", "count"])
        for size, count in histogram:
            writer.writerow([size, count])


def write_eval_csv(path: str | Path, result: MapResult, vocabulary: Vocabulary) -> None:
    """Per-class AP rows followed by one summary mAP row."""
    with _open_csv(path) as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(["class", "num_gt", "ap"])
        for r in result.per_class:
            writer.writerow([vocabulary.name_of(r.class_id), r.num_gt, format_fraction(r.ap)])
        writer.writerow(["mAP", sum(r.num_gt for r in result.per_class),
                         format_fraction(result.map)])


def write_eval_json(path: str | Path, result: MapResult, vocabulary: Vocabulary) -> None:
    """Full evaluation report, including PR points for plotting."""
    payload = {
        "map": result.map,
        "num_classes": result.num_classes,
        "per_class": [
            {
                "class": vocabulary.name_of(r.class_id),
                "class_id": r.class_id,
                "num_gt": r.num_gt,
                "ap": r.ap,
                "pr_points": [[rec, prec] for rec, prec in r.pr_points],
            }
            for r in result.per_class
        ],
    }
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(payload, f, indent=2, sort_keys=True)
        f.write("\n")
