import random

import pytest
from hypothesis import given, settings, strategies as st

from coocmine import (
    EmptyDatabaseError,
    FrequentItemset,
    InternalConsistencyError,
    MinerConfig,
    Transaction,
    TransactionDb,
    Vocabulary,
    brute_force_frequent,
    derive_rules,
    generate_candidates,
    mine_all,
    mine_all_fpgrowth,
    mine_frequent_1,
    prune_by_support,
)
from conftest import CAR, DOG, PERSON, make_db, random_db

CFG = MinerConfig(min_support=0.5)


def itemsets_of(frequent):
    return [fi.itemset for fi in frequent]


class TestMineFrequent1:
    def test_micro_at_half(self, micro_db):
        result = mine_frequent_1(micro_db, CFG)
        assert itemsets_of(result) == [(PERSON,), (DOG,), (CAR,)]
        assert [fi.support for fi in result] == [0.75, 0.75, 0.5]
        assert [fi.count for fi in result] == [3, 3, 2]

    def test_micro_at_eighty(self, micro_db):
        assert mine_frequent_1(micro_db, MinerConfig(min_support=0.8)) == []

    def test_single_transaction(self):
        db = make_db(["a"], [(0,)])
        assert mine_frequent_1(db, CFG) == [FrequentItemset((0,), 1.0, 1)]

    def test_empty_db(self):
        db = TransactionDb(Vocabulary.from_names(["a"]), ())
        with pytest.raises(EmptyDatabaseError):
            mine_frequent_1(db, CFG)


class TestGenerateCandidates:
    def test_three_singletons_join_to_all_pairs(self):
        level = [FrequentItemset((c,), 0.5, 2) for c in (PERSON, DOG, CAR)]
        assert generate_candidates(level) == [(0, 1), (0, 2), (1, 2)]

    def test_subset_prune_removes_triple(self):
        level = [FrequentItemset((0, 1), 0.5, 2), FrequentItemset((0, 2), 0.5, 2)]
        # candidate (0,1,2) requires (1,2) in the level
        assert generate_candidates(level) == []

    def test_single_itemset_yields_nothing(self):
        assert generate_candidates([FrequentItemset((0,), 1.0, 4)]) == []

    def test_mixed_sizes_rejected(self):
        level = [FrequentItemset((0,), 1.0, 4), FrequentItemset((0, 1), 0.5, 2)]
        with pytest.raises(ValueError):
            generate_candidates(level)


class TestPruneBySupport:
    def test_micro_pairs(self, micro_db):
        kept = prune_by_support(micro_db, [(0, 1), (0, 2), (1, 2)], CFG)
        assert itemsets_of(kept) == [(0, 1), (0, 2)]
        assert [fi.count for fi in kept] == [2, 2]

    def test_empty_candidates(self, micro_db):
        assert prune_by_support(micro_db, [], CFG) == []

    def test_floor_threshold_keeps_everything_present(self, micro_db):
        floor = MinerConfig(min_support=1 / len(micro_db.transactions))
        kept = prune_by_support(micro_db, [(0, 1), (0, 2), (1, 2)], floor)
        assert itemsets_of(kept) == [(0, 1), (0, 2), (1, 2)]

    def test_mixed_sizes_rejected(self, micro_db):
        with pytest.raises(ValueError):
            prune_by_support(micro_db, [(0,), (0, 1)], CFG)


class TestMineAll:
    def test_micro_five_itemsets(self, micro_db):
        result = mine_all(micro_db, CFG)
        assert itemsets_of(result) == [(0,), (1,), (2,), (0, 1), (0, 2)]

    def test_size_cap(self, micro_db):
        capped = mine_all(micro_db, MinerConfig(min_support=0.5, max_itemset_size=1))
        assert itemsets_of(capped) == [(0,), (1,), (2,)]

    def test_floor_threshold_equals_oracle_closure(self, micro_db):
        floor = MinerConfig(min_support=1 / len(micro_db.transactions))
        assert mine_all(micro_db, floor) == brute_force_frequent(micro_db, floor)

    def test_empty_db(self):
        db = TransactionDb(Vocabulary.from_names(["a"]), ())
        with pytest.raises(EmptyDatabaseError):
            mine_all(db, CFG)


class TestMineAllFpGrowth:
    def test_micro_matches_apriori(self, micro_db):
        assert mine_all_fpgrowth(micro_db, CFG) == mine_all(micro_db, CFG)

    def test_single_transaction_powerset(self):
        db = make_db(["a", "b", "c"], [(0, 1, 2)])
        result = mine_all_fpgrowth(db, CFG)
        assert itemsets_of(result) == [
            (0,), (1,), (2,), (0, 1), (0, 2), (1, 2), (0, 1, 2),
        ]
        assert all(fi.support == 1.0 for fi in result)

    def test_support_one_without_universal_label(self):
        db = make_db(["a", "b"], [(0,), (1,)])
        assert mine_all_fpgrowth(db, MinerConfig(min_support=1.0)) == []

    def test_support_one_keeps_universal_label(self):
        db = make_db(["a", "b"], [(0,), (0, 1)])
        result = mine_all_fpgrowth(db, MinerConfig(min_support=1.0))
        assert itemsets_of(result) == [(0,)]

    def test_empty_db(self):
        db = TransactionDb(Vocabulary.from_names(["a"]), ())
        with pytest.raises(EmptyDatabaseError):
            mine_all_fpgrowth(db, CFG)


class TestDeriveRules:
    def test_micro_rule_metrics(self, micro_db):
        rules = derive_rules(mine_all(micro_db, CFG), 0.5)
        by_pair = {(r.antecedent, r.consequent): r for r in rules}
        person_dog = by_pair[((PERSON,), (DOG,))]
        assert person_dog.support == 0.5
        assert person_dog.confidence == pytest.approx(2 / 3, abs=1e-12)
        assert person_dog.lift == pytest.approx(8 / 9, abs=1e-12)
        dog_person = by_pair[((DOG,), (PERSON,))]
        assert dog_person.confidence == pytest.approx(2 / 3, abs=1e-12)
        assert dog_person.lift == pytest.approx(8 / 9, abs=1e-12)

    def test_min_confidence_one(self, micro_db):
        # car appears only alongside person, so car -> person is the single
        # confidence-1.0 rule in the micro db.
        rules = derive_rules(mine_all(micro_db, CFG), 1.0)
        assert [(r.antecedent, r.consequent) for r in rules] == [((CAR,), (PERSON,))]
        assert rules[0].confidence == 1.0

    def test_not_subset_closed_rejected(self):
        with pytest.raises(InternalConsistencyError):
            derive_rules([FrequentItemset((0, 1), 0.5, 2)], 0.5)

    def test_min_confidence_validated(self, micro_db):
        with pytest.raises(ValueError):
            derive_rules(mine_all(micro_db, CFG), 0.0)

    def test_lift_symmetry_for_singleton_rules(self):
        rng = random.Random(3)
        for _ in range(20):
            db = random_db(rng, max_classes=6, max_transactions=25)
            frequent = mine_all(db, MinerConfig(min_support=0.2))
            rules = derive_rules(frequent, 1e-9)
            lifts = {
                (r.antecedent, r.consequent): r.lift
                for r in rules
                if len(r.antecedent) == 1 and len(r.consequent) == 1
            }
            for (a, b), lift in lifts.items():
                assert lift == pytest.approx(lifts[(b, a)], rel=1e-12)


@st.composite
def small_dbs(draw):
    n = draw(st.integers(1, 6))
    vocab = Vocabulary.from_names([f"c{i}" for i in range(n)])
    n_tx = draw(st.integers(1, 15))
    transactions = tuple(
        Transaction(f"img{i}", tuple(sorted(draw(st.sets(st.integers(0, n - 1))))))
        for i in range(n_tx)
    )
    return TransactionDb(vocab, transactions)


@given(small_dbs(), st.sampled_from([0.2, 0.4, 0.5, 0.7]))
@settings(max_examples=150)
def test_engines_agree(db, min_support):
    cfg = MinerConfig(min_support=min_support)
    assert mine_all_fpgrowth(db, cfg) == mine_all(db, cfg)


@given(small_dbs(), st.sampled_from([0.2, 0.4, 0.6]))
def test_downward_closure(db, min_support):
    from itertools import combinations

    result = mine_all(db, MinerConfig(min_support=min_support))
    found = set(itemsets_of(result))
    for itemset in found:
        for size in range(1, len(itemset)):
            for sub in combinations(itemset, size):
                assert sub in found


@given(small_dbs(), st.sampled_from([(0.2, 0.5), (0.3, 0.6), (0.5, 1.0)]))
def test_min_support_monotonicity(db, thresholds):
    low, high = thresholds
    at_low = set(itemsets_of(mine_all(db, MinerConfig(min_support=low))))
    at_high = set(itemsets_of(mine_all(db, MinerConfig(min_support=high))))
    assert at_high <= at_low


def test_output_is_independent_of_transaction_order():
    rng = random.Random(11)
    for _ in range(10):
        db = random_db(rng, max_classes=7, max_transactions=30)
        shuffled = list(db.transactions)
        rng.shuffle(shuffled)
        permuted = TransactionDb(db.vocabulary, tuple(shuffled))
        cfg = MinerConfig(min_support=0.3)
        assert mine_all(db, cfg) == mine_all(permuted, cfg)
        assert mine_all_fpgrowth(db, cfg) == mine_all_fpgrowth(permuted, cfg)


def test_output_is_independent_of_worker_count():
    rng = random.Random(13)
    for _ in range(10):
        db = random_db(rng, max_classes=7, max_transactions=30)
        serial = mine_all(db, MinerConfig(min_support=0.3, workers=1))
        parallel = mine_all(db, MinerConfig(min_support=0.3, workers=4))
        assert serial == parallel


def test_config_validation():
    with pytest.raises(ValueError):
        MinerConfig(min_support=0.0)
    with pytest.raises(ValueError):
        MinerConfig(min_support=1.5)
    with pytest.raises(ValueError):
        MinerConfig(max_itemset_size=0)
    with pytest.raises(ValueError):
        MinerConfig(workers=0)
