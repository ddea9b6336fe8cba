"""Command-line pipeline: ingest -> mine -> analyze -> eval -> report.

Stage 1 output (detections or ground-truth annotations) is ingested into a
labels-only transactions artifact; every later command consumes that artifact
or the original files and emits byte-deterministic reports.

Exit codes: 0 success, 2 input/format error, 3 empty-data error,
4 no-evaluable-classes.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cooccurrence as cooc
from . import ingest as ing
from . import mining, reporting
from .errors import (
    CoocmineError,
    EmptyDatabaseError,
    EmptyRestrictionError,
    FormatError,
    NoEvaluableClassesError,
    ParseError,
)
from .evaluation import EvalConfig, Interpolation, evaluate_detections
from .model import TransactionDb

EXIT_INPUT_ERROR = 2
EXIT_EMPTY_DATA = 3
EXIT_NO_EVALUABLE = 4

DEFAULTS = {
    "min-support": 0.5,
    "min-confidence": 0.5,
    "cooccur-threshold": 0.5,
    "score-threshold": 0.5,
    "iou-threshold": 0.5,
    "interpolation": "all",
    "engine": "apriori",
    "top-k": 10,
    "workers": 1,
    "out": ".",
}

_CONVERTERS = {
    "min-support": float,
    "min-confidence": float,
    "cooccur-threshold": float,
    "score-threshold": float,
    "iou-threshold": float,
    "base-threshold": float,
    "top-k": int,
    "max-size": int,
    "workers": int,
    "interpolation": str,
    "engine": str,
    "support-mode": str,
    "format": str,
    "vocab": str,
    "out": str,
    "rules": lambda v: v.lower() in ("1", "true", "yes"),
}


def _read_config(path: str) -> dict[str, str]:
    """Flat key/value config file: one `key = value` per line, # comments."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ParseError("expected `key = value`", line_number)
            key, _, value = line.partition("=")
            key = key.strip().replace("_", "-")
            if key not in _CONVERTERS:
                raise FormatError(f"unknown config key: {key!r}")
            values[key] = value.strip()
    return values


class _Options:
    """Flag values override config-file values, which override defaults."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = _read_config(args.config) if getattr(args, "config", None) else {}

    def get(self, key: str, default=None):
        flag = getattr(self.args, key.replace("-", "_"), None)
        if flag is not None:
            return flag
        if key in self.config:
            return _CONVERTERS[key](self.config[key])
        if key in DEFAULTS:
            return DEFAULTS[key]
        return default

    def given(self, key: str) -> bool:
        """True when the value came from a flag or the config file."""
        return getattr(self.args, key.replace("-", "_"), None) is not None or key in self.config

    def miner_config(self, default_mode: str = "global") -> mining.MinerConfig:
        return mining.MinerConfig(
            min_support=self.get("min-support"),
            max_itemset_size=self.get("max-size"),
            support_mode=mining.SupportMode(self.get("support-mode", default_mode)),
            engine=mining.Engine(self.get("engine")),
            workers=self.get("workers"),
        )

    def out_dir(self) -> Path:
        out = Path(self.get("out"))
        out.mkdir(parents=True, exist_ok=True)
        return out


def _load_db(path: str, score_threshold: float = 0.0) -> TransactionDb:
    cfg = ing.IngestConfig(score_threshold=score_threshold)
    db, _ = ing.read_detections_jsonl(path, cfg)
    if not db.transactions:
        raise EmptyDatabaseError(f"no usable transactions in {path}")
    return db


def _cmd_ingest(opts: _Options) -> int:
    out = opts.out_dir()
    fmt = opts.get("format")
    if fmt is None:
        raise FormatError("--format {jsonl,coco} is required")
    if fmt == "coco":
        db = ing.read_coco_ground_truth(opts.args.input)
        total = len(ing._load_coco(opts.args.input)["images"])
    else:
        vocab_path = opts.get("vocab")
        cfg = ing.IngestConfig(
            score_threshold=opts.get("score-threshold"),
            vocabulary_source=(
                ing.VocabularySource.FROM_COCO_CATEGORIES
                if vocab_path
                else ing.VocabularySource.FROM_FILE
            ),
            categories_path=vocab_path,
        )
        db, records = ing.read_detections_jsonl(opts.args.input, cfg)
        total = len(records)
    if not db.transactions:
        raise EmptyDatabaseError("every image was excluded; nothing to write")
    artifact = out / "transactions.jsonl"
    ing.write_transactions_jsonl(db, artifact)
    print(f"images kept: {len(db.transactions)}")
    print(f"images dropped: {total - len(db.transactions)}")
    print(f"vocabulary size: {len(db.vocabulary)}")
    print(f"wrote {artifact}")
    return 0


def _do_mine(db: TransactionDb, opts: _Options, out: Path) -> None:
    cfg = opts.miner_config()
    itemsets = mining.mine(db, cfg)
    path = out / "frequent_itemsets.csv"
    reporting.write_frequent_itemsets_csv(path, itemsets, db.vocabulary)
    print(f"wrote {path} ({len(itemsets)} itemsets)")
    if opts.get("rules", False):
        rules = mining.derive_rules(itemsets, opts.get("min-confidence"))
        rules_path = out / "rules.csv"
        reporting.write_rules_csv(rules_path, rules, db.vocabulary)
        print(f"wrote {rules_path} ({len(rules)} rules)")


def _cmd_mine(opts: _Options) -> int:
    db = _load_db(opts.args.db)
    _do_mine(db, opts, opts.out_dir())
    return 0


def _do_analyze(db: TransactionDb, opts: _Options, out: Path) -> None:
    cfg = opts.miner_config(default_mode="base")
    if opts.given("top-k") and opts.given("base-threshold"):
        raise ValueError("--top-k and --base-threshold are mutually exclusive")
    base_threshold = opts.get("base-threshold")
    if base_threshold is not None:
        report = cooc.identify_base_classes(db, frequency_threshold=base_threshold)
    else:
        report = cooc.identify_base_classes(db, top_k=opts.get("top-k"))
    matrix = cooc.build_matrix(db)
    threshold = opts.get("cooccur-threshold")
    per_base = [
        cooc.cooccurring_for_base(db, b, cfg, threshold) for b in report.class_ids
    ]
    counts = [(bc.base, len(bc.cooccurring)) for bc in per_base]
    histogram = cooc.itemset_size_histogram(per_base)

    reporting.write_base_classes_csv(out / "base_classes.csv", report, db.vocabulary)
    reporting.write_matrix_csv(out / "cooccurrence_matrix.csv", matrix)
    reporting.write_cooccurrence_counts_csv(out / "fig2_data.csv", counts, db.vocabulary)
    reporting.write_size_histogram_csv(out / "fig3_data.csv", histogram)
    for name in ("base_classes.csv", "cooccurrence_matrix.csv", "fig2_data.csv", "fig3_data.csv"):
        print(f"wrote {out / name}")


def _cmd_analyze(opts: _Options) -> int:
    db = _load_db(opts.args.db)
    _do_analyze(db, opts, opts.out_dir())
    return 0


def _do_eval(detections: str, ground_truth: str, opts: _Options, out: Path) -> None:
    vocabulary = ing.read_coco_vocabulary(ground_truth)
    gts = ing.read_ground_truth_boxes(ground_truth)
    _, records = ing.read_detections_jsonl(detections, ing.IngestConfig(score_threshold=0.0))
    cfg = EvalConfig(
        iou_threshold=opts.get("iou-threshold"),
        interpolation=Interpolation(opts.get("interpolation")),
    )
    result = evaluate_detections(records, gts, vocabulary, cfg)
    reporting.write_eval_json(out / "eval_report.json", result, vocabulary)
    reporting.write_eval_csv(out / "eval_report.csv", result, vocabulary)
    print(f"wrote {out / 'eval_report.json'}")
    print(f"wrote {out / 'eval_report.csv'}")
    print(f"mAP: {reporting.format_fraction(result.map)} over {result.num_classes} classes")


def _cmd_eval(opts: _Options) -> int:
    _do_eval(opts.args.detections, opts.args.ground_truth, opts, opts.out_dir())
    return 0


def _cmd_report(opts: _Options) -> int:
    db = _load_db(opts.args.db)
    out = opts.out_dir()
    _do_mine(db, opts, out)
    _do_analyze(db, opts, out)
    detections = getattr(opts.args, "detections", None)
    ground_truth = getattr(opts.args, "ground_truth", None)
    if detections and ground_truth:
        _do_eval(detections, ground_truth, opts, out)
    else:
        print("eval skipped (pass --detections and --ground-truth to include it)")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file; flags override it")
    parser.add_argument("--out", help="output directory (default: current directory)")


def _add_miner_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--min-support", type=float, help="minimum support fraction (default 0.5)")
    parser.add_argument("--support-mode", choices=["global", "base"],
                        help="support denominator mode")
    parser.add_argument("--engine", choices=["apriori", "fp-growth"],
                        help="mining engine (default apriori)")
    parser.add_argument("--max-size", type=int, help="cap on itemset size (default unlimited)")
    parser.add_argument("--workers", type=int,
                        help="parallel workers for support counting (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coocmine",
        description="Co-occurrence mining over multi-label detection outputs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse detections/annotations into a transactions artifact")
    p.add_argument("input", help="detections JSONL or COCO annotation JSON")
    p.add_argument("--format", choices=["jsonl", "coco"], help="input format")
    p.add_argument("--score-threshold", type=float,
                   help="drop detections below this score (default 0.5)")
    p.add_argument("--vocab", help="COCO file whose categories define the vocabulary (jsonl input)")
    _add_common(p)
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("mine", help="mine frequent itemsets (and optionally rules)")
    p.add_argument("db", help="transactions artifact from `ingest`")
    _add_miner_flags(p)
    p.add_argument("--rules", action="store_const", const=True, default=None,
                   help="also derive association rules")
    p.add_argument("--min-confidence", type=float,
                   help="minimum rule confidence (default 0.5)")
    _add_common(p)
    p.set_defaults(func=_cmd_mine)

    p = sub.add_parser("analyze", help="base classes, co-occurrence matrix, and chart data")
    p.add_argument("db", help="transactions artifact from `ingest`")
    _add_miner_flags(p)
    p.add_argument("--top-k", type=int, help="select the k most frequent classes as bases")
    p.add_argument("--base-threshold", type=float,
                   help="select bases by image frequency >= threshold instead of top-k")
    p.add_argument("--cooccur-threshold", type=float,
                   help="conditional frequency threshold for co-occurring classes (default 0.5)")
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("eval", help="score detections against COCO ground truth (AP, mAP)")
    p.add_argument("detections", help="detections JSONL with boxes and scores")
    p.add_argument("ground_truth", help="COCO annotation JSON")
    p.add_argument("--iou-threshold", type=float, help="IoU threshold for matching (default 0.5)")
    p.add_argument("--interpolation", choices=["all", "11pt"],
                   help="AP interpolation mode (default all)")
    _add_common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("report", help="run mine + analyze (+ eval) and bundle the outputs")
    p.add_argument("db", help="transactions artifact from `ingest`")
    _add_miner_flags(p)
    p.add_argument("--rules", action="store_const", const=True, default=None)
    p.add_argument("--min-confidence", type=float)
    p.add_argument("--top-k", type=int)
    p.add_argument("--base-threshold", type=float)
    p.add_argument("--cooccur-threshold", type=float)
    p.add_argument("--detections", help="detections JSONL for the eval stage")
    p.add_argument("--ground-truth", help="COCO annotation JSON for the eval stage")
    p.add_argument("--iou-threshold", type=float)
    p.add_argument("--interpolation", choices=["all", "11pt"])
    _add_common(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        opts = _Options(args)
        return args.func(opts)
    except (EmptyDatabaseError, EmptyRestrictionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_EMPTY_DATA
    except NoEvaluableClassesError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NO_EVALUABLE
    except (CoocmineError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
