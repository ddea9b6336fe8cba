"""Co-occurrence mining over multi-label detection outputs.

Per-image label sets become transactions; frequent labelsets are mined with
interchangeable level-wise and pattern-growth engines; base classes and their
co-occurring classes are reported alongside association rules, co-occurrence
matrices, and detection-quality metrics (AP / mAP).
"""

from .cooccurrence import (
    BaseClassReport,
    BaseCooccurrence,
    CooccurrenceMatrix,
    build_matrix,
    cooccurrence_counts,
    cooccurring_for_base,
    identify_base_classes,
    itemset_size_histogram,
)
from .errors import (
    CoocmineError,
    EmptyDatabaseError,
    EmptyRestrictionError,
    FormatError,
    InternalConsistencyError,
    NoEvaluableClassesError,
    ParseError,
    ReferentialIntegrityError,
    SizeGuardError,
    UnknownClassError,
)
from .evaluation import (
    ApResult,
    EvalConfig,
    GroundTruthBox,
    Interpolation,
    MapResult,
    average_precision,
    evaluate_detections,
    iou,
    match_detections,
    mean_average_precision,
)
from .ingest import (
    Detection,
    DetectionRecord,
    IngestConfig,
    VocabularySource,
    read_coco_ground_truth,
    read_coco_vocabulary,
    read_detections_jsonl,
    read_ground_truth_boxes,
    write_detections_jsonl,
    write_transactions_jsonl,
)
from .mining import (
    AssociationRule,
    Engine,
    FrequentItemset,
    MinerConfig,
    SupportMode,
    derive_rules,
    generate_candidates,
    mine,
    mine_all,
    mine_all_fpgrowth,
    mine_frequent_1,
    prune_by_support,
)
from .model import (
    Itemset,
    Transaction,
    TransactionDb,
    Vocabulary,
    make_itemset,
    restrict_to_base,
    support,
)
from .oracle import brute_force_frequent

__version__ = "0.1.0"

__all__ = [
    "ApResult",
    "AssociationRule",
    "BaseClassReport",
    "BaseCooccurrence",
    "CoocmineError",
    "CooccurrenceMatrix",
    "Detection",
    "DetectionRecord",
    "EmptyDatabaseError",
    "EmptyRestrictionError",
    "Engine",
    "EvalConfig",
    "FormatError",
    "FrequentItemset",
    "GroundTruthBox",
    "IngestConfig",
    "InternalConsistencyError",
    "Interpolation",
    "Itemset",
    "MapResult",
    "MinerConfig",
    "NoEvaluableClassesError",
    "ParseError",
    "ReferentialIntegrityError",
    "SizeGuardError",
    "SupportMode",
    "Transaction",
    "TransactionDb",
    "UnknownClassError",
    "Vocabulary",
    "VocabularySource",
    "average_precision",
    "brute_force_frequent",
    "build_matrix",
    "cooccurrence_counts",
    "cooccurring_for_base",
    "derive_rules",
    "evaluate_detections",
    "generate_candidates",
    "identify_base_classes",
    "iou",
    "itemset_size_histogram",
    "make_itemset",
    "match_detections",
    "mean_average_precision",
    "mine",
    "mine_all",
    "mine_all_fpgrowth",
    "mine_frequent_1",
    "prune_by_support",
    "read_coco_ground_truth",
    "read_coco_vocabulary",
    "read_detections_jsonl",
    "read_ground_truth_boxes",
    "restrict_to_base",
    "support",
    "write_detections_jsonl",
    "write_transactions_jsonl",
]
