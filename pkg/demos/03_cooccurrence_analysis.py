#!/usr/bin/env python3
# Base classes and their co-occurring classes.
#
# Base classes are the most frequent classes in the dataset. For each base,
# a class is considered co-occurring when its conditional frequency (share of
# the base's images that also contain it) reaches a threshold.

import random

from coocmine import (
    MinerConfig,
    SupportMode,
    Transaction,
    TransactionDb,
    Vocabulary,
    build_matrix,
    cooccurrence_counts,
    cooccurring_for_base,
    identify_base_classes,
    itemset_size_histogram,
)

# A small street-scene dataset: people appear everywhere, cars and bicycles
# cluster together, traffic lights tag along with cars.
rng = random.Random(42)
names = ["person", "car", "bicycle", "traffic_light", "bench", "tree"]
vocab = Vocabulary.from_names(names)
PERSON, CAR, BICYCLE, LIGHT, BENCH, TREE = range(6)

transactions = []
for i in range(60):
    labels = set()
    if rng.random() < 0.85:
        labels.add(PERSON)
    if rng.random() < 0.5:
        labels.add(CAR)
        if rng.random() < 0.7:
            labels.add(LIGHT)
        if rng.random() < 0.5:
            labels.add(BICYCLE)
    if rng.random() < 0.3:
        labels.add(BENCH)
    if rng.random() < 0.4:
        labels.add(TREE)
    if not labels:
        labels.add(TREE)
    transactions.append(Transaction(f"img{i:03d}", tuple(sorted(labels))))

db = TransactionDb(vocab, tuple(transactions), source_tag="street-demo")

report = identify_base_classes(db, top_k=3)
print("top-3 base classes by image frequency:")
for entry in report.entries:
    print(f"  {vocab.name_of(entry.class_id):<14} {entry.image_count:>3} images "
          f"({entry.image_frequency:.2f})")

matrix = build_matrix(db)
print("\nco-occurrence matrix (joint image counts):")
print("  " + " ".join(f"{n[:6]:>7}" for n in names))
for i, name in enumerate(names):
    row = " ".join(f"{matrix.counts[i, j]:>7}" for j in range(len(names)))
    print(f"  {row}   {name}")

cfg = MinerConfig(min_support=0.5, support_mode=SupportMode.BASE_CONDITIONED)
print("\nper-base co-occurring classes (conditional frequency >= 0.5):")
per_base = []
for base in report.class_ids:
    analysis = cooccurring_for_base(db, base, cfg, cooccur_threshold=0.5)
    per_base.append(analysis)
    partners = ", ".join(
        f"{vocab.name_of(c.class_id)} ({c.conditional_frequency:.2f})"
        for c in analysis.cooccurring
    ) or "(none)"
    print(f"  {vocab.name_of(base)}: {partners}")

counts = cooccurrence_counts(db, report.class_ids, cfg, 0.5)
print("\nnumber of co-occurring classes per base (chart data):")
for base, count in counts:
    print(f"  {vocab.name_of(base):<14} {count}")

print("\nhistogram of frequent labelset sizes across all bases:")
for size, count in itemset_size_histogram(per_base):
    print(f"  size {size}: {'#' * count} ({count})")
