"""Brute-force reference miner for testing the real engines on small inputs.

Enumerates every itemset over the vocabulary and counts support by direct
scan. Shares nothing with the engines except the definition of support, so it
can referee them.
"""

from __future__ import annotations

from itertools import combinations

from .errors import EmptyDatabaseError, SizeGuardError
from .mining import FrequentItemset, MinerConfig
from .model import TransactionDb

MAX_ORACLE_CLASSES = 20


def brute_force_frequent(db: TransactionDb, cfg: MinerConfig) -> list[FrequentItemset]:
    """Exact frequent itemsets by exhaustive enumeration; O(2^|vocabulary|)."""
    n_classes = len(db.vocabulary)
    if n_classes > MAX_ORACLE_CLASSES:
        raise SizeGuardError(
            f"oracle refuses vocabularies over {MAX_ORACLE_CLASSES} classes, got {n_classes}"
        )
    if not db.transactions:
        raise EmptyDatabaseError("cannot mine an empty database")

    total = len(db.transactions)
    label_sets = [frozenset(t.labels) for t in db.transactions]
    max_size = n_classes
    if cfg.max_itemset_size is not None:
        max_size = min(max_size, cfg.max_itemset_size)

    found = []
    for size in range(1, max_size + 1):
        for itemset in combinations(range(n_classes), size):
            target = frozenset(itemset)
            count = sum(1 for labels in label_sets if target <= labels)
            if count and count / total >= cfg.min_support:
                found.append(FrequentItemset(itemset, count / total, count))
    return found
