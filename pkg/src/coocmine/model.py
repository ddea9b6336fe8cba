"""Canonical data model: vocabulary, per-image label transactions, support.

A transaction is the deduplicated set of class labels present in one image.
Support of a labelset is the fraction of transactions containing it, which is
the quantity every mining and analysis operation in this package is built on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import EmptyDatabaseError, EmptyRestrictionError, UnknownClassError

# A labelset: strictly increasing tuple of class ids.
Itemset = tuple[int, ...]


def make_itemset(items: Iterable[int]) -> Itemset:
    """Normalize an iterable of class ids into a sorted, deduplicated tuple."""
    out = tuple(sorted(set(items)))
    if any(i < 0 for i in out):
        raise ValueError(f"class ids must be non-negative, got {out}")
    return out


@dataclass(frozen=True)
class Vocabulary:
    """Ordered class names; a class id is the index of its name."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise ValueError("vocabulary must not be empty")
        if any(not n for n in self.names):
            raise ValueError("class names must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("class names must be unique")

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "Vocabulary":
        return cls(tuple(names))

    @cached_property
    def _by_name(self) -> dict[str, int]:
        return {name: i for i, name in enumerate(self.names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, class_id: int) -> bool:
        return 0 <= class_id < len(self.names)

    @property
    def entries(self) -> list[tuple[int, str]]:
        return list(enumerate(self.names))

    def id_of(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownClassError(f"unknown class name: {name!r}") from None

    def name_of(self, class_id: int) -> str:
        if class_id not in self:
            raise UnknownClassError(f"unknown class id: {class_id}")
        return self.names[class_id]


@dataclass(frozen=True)
class Transaction:
    """One image's deduplicated label set, keyed by an opaque image id."""

    image_id: str
    labels: Itemset

    def __post_init__(self):
        if not self.image_id:
            raise ValueError("image_id must be non-empty")
        if list(self.labels) != sorted(set(self.labels)):
            raise ValueError(f"labels must be strictly increasing, got {self.labels}")


@dataclass(frozen=True)
class TransactionDb:
    """Immutable collection of transactions under one vocabulary.

    Safe to share across threads; every operation on it is a pure function.
    """

    vocabulary: Vocabulary
    transactions: tuple[Transaction, ...]
    source_tag: str = ""

    def __post_init__(self):
        seen: set[str] = set()
        for t in self.transactions:
            if t.image_id in seen:
                raise ValueError(f"duplicate image_id: {t.image_id!r}")
            seen.add(t.image_id)
            for c in t.labels:
                if c not in self.vocabulary:
                    raise UnknownClassError(f"unknown class id: {c}")

    def __len__(self) -> int:
        return len(self.transactions)

    @cached_property
    def label_sets(self) -> tuple[frozenset[int], ...]:
        """Frozen label sets, one per transaction, for fast superset tests."""
        return tuple(frozenset(t.labels) for t in self.transactions)


def _check_itemset(db: TransactionDb, s: Sequence[int]) -> frozenset[int]:
    if not s:
        raise ValueError("itemset must be non-empty")
    for c in s:
        if c not in db.vocabulary:
            raise UnknownClassError(f"unknown class id: {c}")
    return frozenset(s)


def support(db: TransactionDb, s: Sequence[int]) -> tuple[float, int]:
    """Return (fraction, count) of transactions whose labels contain ``s``."""
    target = _check_itemset(db, s)
    if not db.transactions:
        raise EmptyDatabaseError("support is undefined on an empty database")
    count = sum(1 for labels in db.label_sets if target <= labels)
    return count / len(db.transactions), count


def restrict_to_base(db: TransactionDb, base: int) -> TransactionDb:
    """Keep only transactions containing ``base``; vocabulary is unchanged.

    The returned db is the denominator for base-conditioned support.
    """
    if base not in db.vocabulary:
        raise UnknownClassError(f"unknown class id: {base}")
    kept = tuple(t for t in db.transactions if base in t.labels)
    if not kept:
        raise EmptyRestrictionError(
            f"class {db.vocabulary.name_of(base)!r} appears in no transaction"
        )
    tag = f"{db.source_tag}|base={db.vocabulary.name_of(base)}"
    return TransactionDb(db.vocabulary, kept, source_tag=tag)
