"""Frequent labelset mining and association rules.

Two interchangeable engines produce the same output: a level-wise engine
(candidate join, subset prune, support filter) and a pattern-growth engine
built on a prefix tree (see fptree.py). Output order is canonical: by itemset
size, then lexicographically by class id, so reports are reproducible
regardless of transaction order or worker count.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from . import fptree
from .errors import EmptyDatabaseError, InternalConsistencyError
from .model import Itemset, TransactionDb

DEFAULT_MIN_SUPPORT = 0.5
DEFAULT_MIN_CONFIDENCE = 0.5


class SupportMode(enum.Enum):
    """Which transaction set the support denominator refers to."""

    GLOBAL = "global"
    BASE_CONDITIONED = "base"


class Engine(enum.Enum):
    APRIORI = "apriori"
    FP_GROWTH = "fp-growth"


@dataclass(frozen=True)
class MinerConfig:
    min_support: float = DEFAULT_MIN_SUPPORT
    max_itemset_size: int | None = None
    support_mode: SupportMode = SupportMode.GLOBAL
    engine: Engine = Engine.APRIORI
    workers: int = 1

    def __post_init__(self):
        if not 0.0 < self.min_support <= 1.0:
            raise ValueError(f"min_support must be in (0, 1], got {self.min_support}")
        if self.max_itemset_size is not None and self.max_itemset_size < 1:
            raise ValueError("max_itemset_size must be >= 1 when finite")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class FrequentItemset:
    itemset: Itemset
    support: float
    count: int


@dataclass(frozen=True)
class AssociationRule:
    antecedent: Itemset
    consequent: Itemset
    support: float
    confidence: float
    lift: float


def _is_frequent(count: int, total: int, min_support: float) -> bool:
    # All engines and the brute-force oracle must share this exact comparison
    # form (fraction vs threshold, not scaled count) so they agree bit-for-bit.
    return count / total >= min_support


def _count_itemsets(
    db: TransactionDb, candidates: Sequence[Itemset], workers: int
) -> list[int]:
    """Count how many transactions contain each candidate.

    The transaction list may be partitioned across workers; integer counts are
    merged by summation, so the result is identical for any worker count.
    """
    targets = [frozenset(c) for c in candidates]

    def count_chunk(chunk: Sequence[frozenset[int]]) -> list[int]:
        counts = [0] * len(targets)
        for labels in chunk:
            for i, target in enumerate(targets):
                if target <= labels:
                    counts[i] += 1
        return counts

    label_sets = db.label_sets
    if workers <= 1 or len(label_sets) < 2:
        return count_chunk(label_sets)

    n = len(label_sets)
    step = -(-n // workers)
    chunks = [label_sets[i : i + step] for i in range(0, n, step)]
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        per_chunk = list(pool.map(count_chunk, chunks))
    return [sum(col) for col in zip(*per_chunk)]


def mine_frequent_1(db: TransactionDb, cfg: MinerConfig) -> list[FrequentItemset]:
    """Frequent singletons: classes whose support meets min_support."""
    if not db.transactions:
        raise EmptyDatabaseError("cannot mine an empty database")
    total = len(db.transactions)
    counts = [0] * len(db.vocabulary)
    for labels in db.label_sets:
        for c in labels:
            counts[c] += 1
    out = []
    for class_id, count in enumerate(counts):
        if count and _is_frequent(count, total, cfg.min_support):
            out.append(FrequentItemset((class_id,), count / total, count))
    return out


def generate_candidates(lk: Sequence[FrequentItemset]) -> list[Itemset]:
    """Join size-k itemsets sharing their first k-1 items, then subset-prune.

    Every k-subset of a surviving candidate must itself be in ``lk``.
    """
    itemsets = sorted({fi.itemset for fi in lk})
    if not itemsets:
        return []
    k = len(itemsets[0])
    if any(len(s) != k for s in itemsets):
        raise ValueError("all itemsets in a level must have equal size")
    level = set(itemsets)
    candidates: list[Itemset] = []
    for i, a in enumerate(itemsets):
        for b in itemsets[i + 1 :]:
            if a[:-1] != b[:-1]:
                break  # sorted order keeps shared prefixes contiguous
            cand = a + (b[-1],)
            if all(sub in level for sub in combinations(cand, k)):
                candidates.append(cand)
    return candidates


def prune_by_support(
    db: TransactionDb, candidates: Sequence[Itemset], cfg: MinerConfig
) -> list[FrequentItemset]:
    """Keep the candidates whose support meets min_support, with counts."""
    if not candidates:
        return []
    sizes = {len(c) for c in candidates}
    if len(sizes) != 1:
        raise ValueError("candidates must all have equal size")
    total = len(db.transactions)
    counts = _count_itemsets(db, candidates, cfg.workers)
    out = []
    for cand, count in zip(candidates, counts):
        if _is_frequent(count, total, cfg.min_support):
            out.append(FrequentItemset(cand, count / total, count))
    return out


def _canonical(found: list[FrequentItemset]) -> list[FrequentItemset]:
    return sorted(found, key=lambda fi: (len(fi.itemset), fi.itemset))


def mine_all(db: TransactionDb, cfg: MinerConfig) -> list[FrequentItemset]:
    """Level-wise mining of all frequent itemsets up to the size cap."""
    level = mine_frequent_1(db, cfg)
    found = list(level)
    k = 1
    while level:
        if cfg.max_itemset_size is not None and k + 1 > cfg.max_itemset_size:
            break
        candidates = generate_candidates(level)
        level = prune_by_support(db, candidates, cfg)
        found.extend(level)
        k += 1
    return _canonical(found)


def mine_all_fpgrowth(db: TransactionDb, cfg: MinerConfig) -> list[FrequentItemset]:
    """Pattern-growth mining; returns exactly the same set as mine_all."""
    if not db.transactions:
        raise EmptyDatabaseError("cannot mine an empty database")
    total = len(db.transactions)
    min_count = _min_count(cfg.min_support, total)
    patterns = fptree.mine_tree(db.label_sets, min_count, cfg.max_itemset_size)
    found = [
        FrequentItemset(itemset, count / total, count)
        for itemset, count in patterns.items()
    ]
    return _canonical(found)


def _min_count(min_support: float, total: int) -> int:
    """Smallest count whose fraction of ``total`` passes the support test."""
    c = max(1, int(min_support * total) - 2)
    while c <= total and not _is_frequent(c, total, min_support):
        c += 1
    return c


def mine(db: TransactionDb, cfg: MinerConfig) -> list[FrequentItemset]:
    """Dispatch to the engine named in the config."""
    if cfg.engine is Engine.FP_GROWTH:
        return mine_all_fpgrowth(db, cfg)
    return mine_all(db, cfg)


def derive_rules(
    frequent: Sequence[FrequentItemset], min_confidence: float = DEFAULT_MIN_CONFIDENCE
) -> list[AssociationRule]:
    """Association rules from a subset-closed frequent itemset list.

    For every frequent itemset of size >= 2 and every non-empty proper subset
    as antecedent, emit antecedent -> complement when its confidence meets
    min_confidence. Supports are read from the list, never recounted.
    """
    if not 0.0 < min_confidence <= 1.0:
        raise ValueError(f"min_confidence must be in (0, 1], got {min_confidence}")
    by_itemset = {fi.itemset: fi for fi in frequent}

    def lookup(itemset: Itemset) -> FrequentItemset:
        try:
            return by_itemset[itemset]
        except KeyError:
            raise InternalConsistencyError(
                f"frequent list is not subset-closed: missing {itemset}"
            ) from None

    rules: list[AssociationRule] = []
    for fi in sorted(frequent, key=lambda f: (len(f.itemset), f.itemset)):
        items = fi.itemset
        if len(items) < 2:
            continue
        for r in range(1, len(items)):
            for antecedent in combinations(items, r):
                consequent = tuple(c for c in items if c not in antecedent)
                confidence = fi.support / lookup(antecedent).support
                if confidence >= min_confidence:
                    lift = confidence / lookup(consequent).support
                    rules.append(
                        AssociationRule(antecedent, consequent, fi.support, confidence, lift)
                    )
    return rules
