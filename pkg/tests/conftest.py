from __future__ import annotations

import random

import pytest

from coocmine import Transaction, TransactionDb, Vocabulary

MICRO_NAMES = ("person", "dog", "car")
PERSON, DOG, CAR = 0, 1, 2


def make_db(names, label_lists, tag="test") -> TransactionDb:
    vocab = Vocabulary.from_names(names)
    transactions = tuple(
        Transaction(f"t{i + 1}", tuple(sorted(set(labels))))
        for i, labels in enumerate(label_lists)
    )
    return TransactionDb(vocab, transactions, source_tag=tag)


def make_micro_db() -> TransactionDb:
    # t1={person,dog}, t2={person,car}, t3={person,dog,car}, t4={dog}
    return make_db(
        MICRO_NAMES,
        [(PERSON, DOG), (PERSON, CAR), (PERSON, DOG, CAR), (DOG,)],
        tag="micro",
    )


def random_db(
    rng: random.Random,
    max_classes: int = 10,
    max_transactions: int = 50,
    min_labels: int = 0,
) -> TransactionDb:
    n = rng.randint(2, max_classes)
    n_tx = rng.randint(1, max_transactions)
    vocab = Vocabulary.from_names([f"c{i:02d}" for i in range(n)])
    transactions = []
    for i in range(n_tx):
        size = rng.randint(min_labels, n)
        labels = tuple(sorted(rng.sample(range(n), size)))
        transactions.append(Transaction(f"img{i:03d}", labels))
    return TransactionDb(vocab, tuple(transactions), source_tag="random")


@pytest.fixture
def micro_db() -> TransactionDb:
    return make_micro_db()
