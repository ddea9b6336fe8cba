"""Base-class identification, co-occurrence matrix, and per-base analysis.

A base class is a class with high image frequency across the dataset. A
co-occurring class for a base is one whose conditional frequency (fraction of
the base's images that also contain it) meets a threshold. Per-base frequent
itemsets are mined over the transactions restricted to the base, so supports
are conditional on the base by default.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .mining import FrequentItemset, MinerConfig, SupportMode, mine
from .model import TransactionDb, restrict_to_base

logger = logging.getLogger(__name__)

DEFAULT_TOP_K = 10
DEFAULT_COOCCUR_THRESHOLD = 0.5


@dataclass(frozen=True)
class BaseClassEntry:
    class_id: int
    image_frequency: float
    image_count: int


@dataclass(frozen=True)
class BaseClassReport:
    """Selected base classes, ranked by descending image frequency."""

    entries: tuple[BaseClassEntry, ...]

    @property
    def class_ids(self) -> list[int]:
        return [e.class_id for e in self.entries]


@dataclass(frozen=True)
class CooccurrenceMatrix:
    """Symmetric class-by-class joint image counts; the diagonal holds
    per-class image counts."""

    vocabulary_names: tuple[str, ...]
    counts: np.ndarray

    def joint(self, a: int, b: int) -> int:
        return int(self.counts[a, b])


@dataclass(frozen=True)
class CooccurringClass:
    class_id: int
    conditional_frequency: float
    joint_count: int


@dataclass(frozen=True)
class BaseCooccurrence:
    base: int
    cooccurring: tuple[CooccurringClass, ...]
    frequent_itemsets: tuple[FrequentItemset, ...]


def identify_base_classes(
    db: TransactionDb,
    *,
    top_k: int | None = None,
    frequency_threshold: float | None = None,
) -> BaseClassReport:
    """Rank classes by image frequency and select bases by one policy.

    Exactly one of top_k / frequency_threshold must be given. Only classes
    appearing in at least one transaction are eligible; ranking ties are
    broken by ascending class id.
    """
    if (top_k is None) == (frequency_threshold is None):
        raise ValueError("specify exactly one of top_k or frequency_threshold")
    if not db.transactions:
        raise ValueError("cannot identify base classes in an empty database")

    total = len(db.transactions)
    counts = [0] * len(db.vocabulary)
    for labels in db.label_sets:
        for c in labels:
            counts[c] += 1
    ranked = sorted(
        (c for c in range(len(counts)) if counts[c] > 0),
        key=lambda c: (-counts[c], c),
    )

    if top_k is not None:
        if top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {top_k}")
        if top_k > len(ranked):
            logger.warning(
                "top_k=%d exceeds the %d classes present; clamping", top_k, len(ranked)
            )
            top_k = len(ranked)
        selected = ranked[:top_k]
    else:
        if not 0.0 < frequency_threshold <= 1.0:
            raise ValueError(
                f"frequency_threshold must be in (0, 1], got {frequency_threshold}"
            )
        selected = [c for c in ranked if counts[c] / total >= frequency_threshold]

    entries = tuple(
        BaseClassEntry(c, counts[c] / total, counts[c]) for c in selected
    )
    return BaseClassReport(entries)


def build_matrix(db: TransactionDb) -> CooccurrenceMatrix:
    """One pass over transactions; entry (a, b) counts images with both."""
    if not db.transactions:
        raise ValueError("cannot build a co-occurrence matrix from an empty database")
    n = len(db.vocabulary)
    counts = np.zeros((n, n), dtype=np.int64)
    for labels in db.label_sets:
        for c in labels:
            counts[c, c] += 1
        for a, b in combinations(sorted(labels), 2):
            counts[a, b] += 1
            counts[b, a] += 1
    return CooccurrenceMatrix(db.vocabulary.names, counts)


def cooccurring_for_base(
    db: TransactionDb,
    base: int,
    cfg: MinerConfig,
    cooccur_threshold: float = DEFAULT_COOCCUR_THRESHOLD,
) -> BaseCooccurrence:
    """Classes co-occurring with ``base`` plus the mined frequent itemsets.

    Conditional frequency of class c is joint_count / (images with base). The
    attached itemsets are mined over the restricted db in base-conditioned
    mode, or over the full db in global mode.
    """
    if not 0.0 <= cooccur_threshold <= 1.0:
        raise ValueError(f"cooccur_threshold must be in [0, 1], got {cooccur_threshold}")
    restricted = restrict_to_base(db, base)
    denom = len(restricted.transactions)

    joint = [0] * len(db.vocabulary)
    for labels in restricted.label_sets:
        for c in labels:
            joint[c] += 1

    cooccurring = [
        CooccurringClass(c, joint[c] / denom, joint[c])
        for c in range(len(joint))
        if c != base and joint[c] and joint[c] / denom >= cooccur_threshold
    ]
    cooccurring.sort(key=lambda e: (-e.conditional_frequency, e.class_id))

    mined_db = restricted if cfg.support_mode is SupportMode.BASE_CONDITIONED else db
    itemsets = tuple(mine(mined_db, cfg))
    return BaseCooccurrence(base, tuple(cooccurring), itemsets)


def cooccurrence_counts(
    db: TransactionDb,
    bases: Sequence[int],
    cfg: MinerConfig,
    cooccur_threshold: float = DEFAULT_COOCCUR_THRESHOLD,
) -> list[tuple[int, int]]:
    """Per base class, the number of distinct co-occurring classes."""
    if not bases:
        raise ValueError("bases must be non-empty")
    return [
        (base, len(cooccurring_for_base(db, base, cfg, cooccur_threshold).cooccurring))
        for base in bases
    ]


def itemset_size_histogram(
    per_base: Sequence[BaseCooccurrence],
) -> list[tuple[int, int]]:
    """Histogram of itemset sizes over all bases, deduplicated across bases."""
    distinct = {fi.itemset for bc in per_base for fi in bc.frequent_itemsets}
    hist: dict[int, int] = {}
    for itemset in distinct:
        hist[len(itemset)] = hist.get(len(itemset), 0) + 1
    return sorted(hist.items())
