"""Pipeline stages and their canonical artifacts.

Each stage reads the artifacts of earlier stages from the output
directory and writes its own: collect -> corpus.jsonl (and raw.jsonl),
preprocess -> matrix.csv + vocabulary.csv, score -> scores.csv,
bootstrap -> labeled.jsonl, train -> model.json, evaluate ->
confusion.csv + confusion_fractions.csv + metrics.json, report ->
distribution.csv + ratios.csv + histogram.json (plus per-product tables
when products are configured).  Stages are resumable: with unchanged
inputs and the same seed a rerun reproduces every artifact byte for
byte.
"""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path

from sentilens import classifier, collector, corpus, evaluate, lexicon, preprocess
from sentilens.config import PipelineConfig
from sentilens.errors import ConfigError, DataError
from sentilens.preprocess import TokenList

log = logging.getLogger(__name__)

CANONICAL_STAGES = (
    "collect",
    "preprocess",
    "score",
    "bootstrap",
    "train",
    "evaluate",
    "report",
)


class ArtifactPaths:
    """All artifact locations under one output directory."""

    def __init__(self, out_dir: Path):
        self.out_dir = Path(out_dir)
        self.raw = self.out_dir / "raw.jsonl"
        self.corpus = self.out_dir / "corpus.jsonl"
        self.matrix = self.out_dir / "matrix.csv"
        self.vocabulary = self.out_dir / "vocabulary.csv"
        self.scores = self.out_dir / "scores.csv"
        self.labeled = self.out_dir / "labeled.jsonl"
        self.model = self.out_dir / "model.json"
        self.confusion = self.out_dir / "confusion.csv"
        self.confusion_fractions = self.out_dir / "confusion_fractions.csv"
        self.metrics = self.out_dir / "metrics.json"
        self.distribution = self.out_dir / "distribution.csv"
        self.ratios = self.out_dir / "ratios.csv"
        self.product_distribution = self.out_dir / "product_distribution.csv"
        self.product_ratios = self.out_dir / "product_ratios.csv"
        self.histogram = self.out_dir / "histogram.json"
        self.predictions = self.out_dir / "predictions.csv"
        self.compare = self.out_dir / "compare.csv"
        self.terms = self.out_dir / "terms.txt"


def _require(path: Path) -> Path:
    if not path.is_file():
        raise DataError(
            f"{path.name} not found in {path.parent}; run the earlier stages first"
        )
    return path


def _read_corpus(paths: ArtifactPaths) -> corpus.Corpus:
    return corpus.read_corpus_jsonl(_require(paths.corpus))


def _tokenize_corpus(
    docs: corpus.Corpus, config: PipelineConfig
) -> list[TokenList]:
    return [
        preprocess.tokenize(doc.text, config.preprocess, doc_id=doc.id)
        for doc in docs
    ]


def load_merged_lexicon(config: PipelineConfig) -> lexicon.Lexicon:
    """Generic base, then domain and slang overlays (later wins)."""
    paths = config.lexicon_paths
    def _load(tag: str) -> lexicon.Lexicon:
        pos = paths[f"{tag}_positive"]
        neg = paths[f"{tag}_negative"]
        for p in (pos, neg):
            if not Path(p).is_file():
                raise ConfigError(f"lexicon file {p} not found")
        return lexicon.load_lexicon(pos, neg, tag, config.preprocess)

    base = _load("generic")
    overlays = []
    for tag in ("domain", "slang"):
        if f"{tag}_positive" in paths:
            overlays.append(_load(tag))
    return lexicon.merge_lexicons(base, overlays)


def stage_collect(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    if not config.sources:
        raise ConfigError("no sources configured; nothing to collect")
    records = []
    documents = []
    for source in config.sources:
        if source.path is not None:
            result = collector.ingest_file(_require(Path(source.path)), source.format)
            source_records = list(result)
            if result.skipped:
                log.warning(
                    "source %s: skipped %d malformed records",
                    source.name,
                    result.skipped,
                )
        else:
            source_records = collector.collect(source.endpoint)
        records.extend(source_records)
        for record in source_records:
            documents.append(
                corpus.parse_record(
                    record,
                    config.field_map,
                    brand=source.brand,
                    product=source.product,
                )
            )
    if config.products:
        documents = corpus.tag_products(documents, config.products)
    built = corpus.build_corpus(documents)
    collector.write_records_jsonl(records, paths.raw)
    corpus.write_corpus_jsonl(built, paths.corpus)
    log.info("collect: %d records -> %d documents", len(records), built.N)
    return [paths.raw, paths.corpus]


def stage_preprocess(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    docs = _read_corpus(paths)
    token_lists = _tokenize_corpus(docs, config)
    matrix = preprocess.build_matrix(token_lists)
    pruned = preprocess.prune_sparse(matrix, config.max_sparsity)
    preprocess.write_matrix_csv(pruned, paths.matrix)
    preprocess.write_vocabulary_csv(pruned, paths.vocabulary)
    log.info(
        "preprocess: %d docs, %d terms after pruning (of %d)",
        len(pruned.doc_ids),
        len(pruned.vocabulary.terms),
        len(matrix.vocabulary.terms),
    )
    return [paths.matrix, paths.vocabulary]


def stage_score(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    docs = _read_corpus(paths)
    merged = load_merged_lexicon(config)
    token_lists = _tokenize_corpus(docs, config)
    scores = lexicon.score_corpus(token_lists, merged)
    lexicon.write_scores_csv(scores, paths.scores)
    log.info("score: %d documents scored with %d lexicon terms", len(scores), len(merged))
    return [paths.scores]


def stage_bootstrap(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    docs = _read_corpus(paths)
    scores = lexicon.read_scores_csv(_require(paths.scores))
    token_lists = _tokenize_corpus(docs, config)
    labeled = classifier.bootstrap_labels(scores, token_lists)
    classifier.write_labeled_jsonl(labeled, paths.labeled)
    log.info(
        "bootstrap: %d of %d documents labeled", len(labeled), len(scores)
    )
    return [paths.labeled]


def stage_train(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    labeled = classifier.read_labeled_jsonl(_require(paths.labeled))
    train_side, _ = evaluate.split(labeled, config.split)
    model = classifier.train(train_side)
    classifier.save_model(model, paths.model)
    log.info(
        "train: %d examples, %d classes, %d vocabulary terms",
        len(train_side),
        len(model.classes),
        model.B,
    )
    return [paths.model]


def stage_evaluate(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    labeled = classifier.read_labeled_jsonl(_require(paths.labeled))
    model = classifier.load_model(_require(paths.model))
    train_side, test_side = evaluate.split(labeled, config.split)
    predictions = classifier.predict_corpus(
        model, (ex.tokens for ex in test_side)
    )
    matrix = evaluate.confusion(predictions, test_side)
    acc = evaluate.accuracy(matrix)
    evaluate.write_confusion_csv(matrix, paths.confusion)
    evaluate.write_confusion_fractions_csv(matrix, paths.confusion_fractions)
    metrics = {
        "accuracy": acc,
        "train_size": len(train_side),
        "test_size": len(test_side),
    }
    with open(paths.metrics, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(metrics, fh, indent=2)
        fh.write("\n")
    log.info("evaluate: accuracy %.4f on %d held-out documents", acc, len(test_side))
    return [paths.confusion, paths.confusion_fractions, paths.metrics]


def stage_report(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    docs = _read_corpus(paths)
    scores = lexicon.read_scores_csv(_require(paths.scores))
    written = []

    brand_map = {doc.id: doc.brand or "all" for doc in docs}
    table = evaluate.distribution(scores, brand_map)
    evaluate.write_distribution_csv(table, paths.distribution)
    evaluate.write_ratios_csv(evaluate.ratio_summary(table), paths.ratios)
    written += [paths.distribution, paths.ratios]

    product_map = {doc.id: doc.product for doc in docs if doc.product}
    product_scores = [s for s in scores if s.doc_id in product_map]
    if product_scores:
        product_table = evaluate.distribution(product_scores, product_map)
        evaluate.write_distribution_csv(product_table, paths.product_distribution)
        evaluate.write_ratios_csv(
            evaluate.ratio_summary(product_table), paths.product_ratios
        )
        written += [paths.product_distribution, paths.product_ratios]

    evaluate.write_histogram_json(evaluate.histogram(scores), paths.histogram)
    written.append(paths.histogram)
    log.info("report: %d score rows over %d groups", len(scores), len(table.groups))
    return written


_STAGE_FUNCTIONS = {
    "collect": stage_collect,
    "preprocess": stage_preprocess,
    "score": stage_score,
    "bootstrap": stage_bootstrap,
    "train": stage_train,
    "evaluate": stage_evaluate,
    "report": stage_report,
}


def run_pipeline(
    config: PipelineConfig, stages: set[str] | None = None
) -> list[Path]:
    """Run the requested stages in canonical order; returns the written
    artifact paths.
    """
    if stages is None:
        requested = set(CANONICAL_STAGES)
    else:
        requested = set(stages)
        unknown = requested - set(CANONICAL_STAGES)
        if unknown:
            raise ConfigError(
                f"unknown stages {sorted(unknown)}; "
                f"choose from {', '.join(CANONICAL_STAGES)}"
            )
    paths = ArtifactPaths(config.output_dir)
    paths.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for stage in CANONICAL_STAGES:
        if stage not in requested:
            continue
        try:
            written.extend(_STAGE_FUNCTIONS[stage](config, paths))
        except DataError as exc:
            raise DataError(f"stage {stage}: {exc}") from exc
    return written


def run_predict(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    """Classify every corpus document with the trained model."""
    docs = _read_corpus(paths)
    model = classifier.load_model(_require(paths.model))
    token_lists = _tokenize_corpus(docs, config)
    predictions = classifier.predict_corpus(model, token_lists)
    with open(paths.predictions, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["doc_id", "predicted"]
            + [f"log_posterior_{c}" for c in model.classes]
        )
        for p in predictions:
            writer.writerow(
                [p.doc_id, p.predicted]
                + [repr(p.log_posteriors[c]) for c in model.classes]
            )
    log.info("predict: %d documents", len(predictions))
    return [paths.predictions]


def run_compare(config: PipelineConfig, paths: ArtifactPaths) -> list[Path]:
    """Lexicon labels vs classifier labels over the same corpus."""
    docs = _read_corpus(paths)
    scores = lexicon.read_scores_csv(_require(paths.scores))
    model = classifier.load_model(_require(paths.model))
    token_lists = _tokenize_corpus(docs, config)
    predictions = classifier.predict_corpus(model, token_lists)
    table = evaluate.compare_methods(scores, predictions)
    evaluate.write_distribution_csv(table, paths.compare)
    log.info("compare: %d documents per method", table.row_total("Lexicon"))
    return [paths.compare]


def run_export_terms(paths: ArtifactPaths, top_k: int) -> list[Path]:
    """Top occurring matrix terms as an annotatable word list."""
    if top_k < 1:
        raise ConfigError(f"top_k must be >= 1, got {top_k}")
    totals: dict[str, int] = {}
    with open(_require(paths.matrix), encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["doc_id", "term", "tf", "weight"]:
            raise DataError(f"unexpected matrix header in {paths.matrix}: {header}")
        for row in reader:
            totals[row[1]] = totals.get(row[1], 0) + int(row[2])
    if not totals:
        raise DataError(f"{paths.matrix} holds no terms")
    ranked = sorted(totals.items(), key=lambda item: (-item[1], item[0]))[:top_k]
    with open(paths.terms, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("# candidate domain-lexicon terms; counts are total occurrences\n")
        fh.write("# split into positive/negative files to re-import\n")
        for term, count in ranked:
            fh.write(f"{term}  # {count}\n")
    log.info("export-terms: wrote %d terms", len(ranked))
    return [paths.terms]
