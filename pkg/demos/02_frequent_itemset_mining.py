#!/usr/bin/env python3
# Frequent labelset mining with two interchangeable engines, plus rules.
#
# The level-wise engine grows candidates one size at a time (join, subset
# prune, support filter). The pattern-growth engine builds a prefix tree and
# mines conditional bases. Both return the identical set; the brute-force
# reference checks them on small inputs.

import random

from coocmine import (
    MinerConfig,
    Transaction,
    TransactionDb,
    Vocabulary,
    brute_force_frequent,
    derive_rules,
    mine_all,
    mine_all_fpgrowth,
)

vocab = Vocabulary.from_names(["person", "dog", "car"])
db = TransactionDb(
    vocab,
    (
        Transaction("img-001", (0, 1)),
        Transaction("img-002", (0, 2)),
        Transaction("img-003", (0, 1, 2)),
        Transaction("img-004", (1,)),
    ),
)

cfg = MinerConfig(min_support=0.5)

print(f"frequent labelsets at min_support={cfg.min_support}:")
for fi in mine_all(db, cfg):
    names = "{" + ", ".join(vocab.name_of(c) for c in fi.itemset) + "}"
    print(f"  {names:<22} support={fi.support:.2f} count={fi.count}")

assert mine_all_fpgrowth(db, cfg) == mine_all(db, cfg)
assert brute_force_frequent(db, cfg) == mine_all(db, cfg)
print("\npattern-growth engine and brute-force reference agree.")

print("\nassociation rules at min_confidence=0.5:")
for rule in derive_rules(mine_all(db, cfg), min_confidence=0.5):
    antecedent = "{" + ", ".join(vocab.name_of(c) for c in rule.antecedent) + "}"
    consequent = "{" + ", ".join(vocab.name_of(c) for c in rule.consequent) + "}"
    print(
        f"  {antecedent} -> {consequent}: support={rule.support:.2f} "
        f"confidence={rule.confidence:.3f} lift={rule.lift:.3f}"
    )

# The engines agree on arbitrary inputs, not just this toy. Try a random db.
rng = random.Random(0)
names = [f"class{i}" for i in range(8)]
random_vocab = Vocabulary.from_names(names)
transactions = tuple(
    Transaction(f"img{i}", tuple(sorted(rng.sample(range(8), rng.randint(1, 5)))))
    for i in range(40)
)
random_db = TransactionDb(random_vocab, transactions)
low = MinerConfig(min_support=0.1)
assert mine_all_fpgrowth(random_db, low) == mine_all(random_db, low)
print(f"\nrandom db: engines agree on {len(mine_all(random_db, low))} frequent labelsets.")
