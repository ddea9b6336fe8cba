#!/usr/bin/env python3
# Transactions and support: the unit everything else is built on.
#
# A transaction is the set of class labels present in one image. The support
# of a labelset is the fraction of transactions containing all its labels.

from coocmine import Transaction, TransactionDb, Vocabulary, restrict_to_base, support

# Four images over three classes. Three dogs in one image still contribute a
# single 'dog' label: transactions are sets, not instance counts.
vocab = Vocabulary.from_names(["person", "dog", "car"])
PERSON, DOG, CAR = 0, 1, 2

db = TransactionDb(
    vocab,
    (
        Transaction("img-001", (PERSON, DOG)),
        Transaction("img-002", (PERSON, CAR)),
        Transaction("img-003", (PERSON, DOG, CAR)),
        Transaction("img-004", (DOG,)),
    ),
    source_tag="demo",
)

print("transactions:")
for t in db.transactions:
    print(f"  {t.image_id}: {{{', '.join(vocab.name_of(c) for c in t.labels)}}}")

print("\nsupport of single classes:")
for c, name in vocab.entries:
    fraction, count = support(db, (c,))
    print(f"  {{{name}}}: {count}/{len(db.transactions)} images = {fraction:.2f}")

fraction, count = support(db, (DOG, CAR))
print(f"\nsupport of {{dog, car}}: {count}/{len(db.transactions)} = {fraction:.2f}")

# Conditioning on a base class: keep only the images containing it. Support
# inside the restricted db is conditional support given the base.
restricted = restrict_to_base(db, PERSON)
print(f"\nimages containing 'person': {[t.image_id for t in restricted.transactions]}")
fraction, count = support(restricted, (DOG,))
print(f"P(dog | person) = {count}/{len(restricted.transactions)} = {fraction:.3f}")
