"""Multinomial Naive Bayes sentiment classifier with Laplace smoothing.

Training counts term occurrences per class and stores everything in log
space: log P(c) = log(docs_c / total) and log P(t|c) = log((T_ct + 1) /
(sum_t' T_ct' + B)) with B the vocabulary size.  Prediction sums the
prior and per-token conditionals, skipping tokens outside the training
vocabulary, and breaks exact ties by class order.  Training labels can
be bootstrapped from lexicon scores (positive score means positive
label, negative means negative, zero-score documents are left out).
"""

from __future__ import annotations

import json
import math
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from sentilens._kernels import accumulate_log_posteriors
from sentilens.errors import DataError, ModelFormatError
from sentilens.lexicon import NEGATIVE, POSITIVE, SentimentScore
from sentilens.preprocess import TokenList

MODEL_FORMAT_VERSION = 1

# Exact ties between classes go to whichever comes first in
# NBModel.classes; the model file records this rule.
TIE_BREAK_RULE = "first class in 'classes' order wins ties"


@dataclass(frozen=True)
class LabeledDoc:
    tokens: TokenList
    label: str

    @property
    def doc_id(self) -> str:
        return self.tokens.doc_id


@dataclass(frozen=True)
class Prediction:
    doc_id: str
    predicted: str
    log_posteriors: dict[str, float]


@dataclass(frozen=True)
class NBModel:
    classes: tuple[str, ...]
    vocabulary: tuple[str, ...]
    log_prior: dict[str, float]
    # per class, dense over the vocabulary in vocabulary order
    log_cond: dict[str, tuple[float, ...]]
    class_term_totals: dict[str, int]

    @property
    def B(self) -> int:
        return len(self.vocabulary)

    @cached_property
    def _term_rows(self) -> dict[str, tuple[float, ...]]:
        # term -> per-class log conditionals, in self.classes order
        columns = [self.log_cond[c] for c in self.classes]
        return {
            term: tuple(col[i] for col in columns)
            for i, term in enumerate(self.vocabulary)
        }


def bootstrap_labels(
    scores: Sequence[SentimentScore], tokens: Sequence[TokenList]
) -> list[LabeledDoc]:
    """Turn lexicon scores into weak training labels.

    Zero-score documents carry no signal and are dropped; order is
    otherwise preserved.  `scores` and `tokens` must align one-to-one.
    """
    if len(scores) != len(tokens):
        raise DataError(
            f"scores/tokens length mismatch: {len(scores)} vs {len(tokens)}"
        )
    labeled = []
    for s, tl in zip(scores, tokens):
        if s.doc_id != tl.doc_id:
            raise DataError(f"doc_id mismatch: {s.doc_id!r} vs {tl.doc_id!r}")
        if s.score > 0:
            labeled.append(LabeledDoc(tokens=tl, label=POSITIVE))
        elif s.score < 0:
            labeled.append(LabeledDoc(tokens=tl, label=NEGATIVE))
    return labeled


def train(
    examples: Sequence[LabeledDoc], classes: Sequence[str] | None = None
) -> NBModel:
    """Fit the model.  `classes` fixes the class set and its tie-break
    order; by default the classes are the labels seen, sorted, so the
    model is independent of example order.
    """
    if not examples:
        raise DataError("cannot train on an empty example list")
    if classes is None:
        class_order = tuple(sorted({ex.label for ex in examples}))
    else:
        class_order = tuple(classes)
        if len(set(class_order)) != len(class_order):
            raise DataError(f"duplicate class names in {class_order}")
    doc_counts: Counter[str] = Counter()
    term_counts: dict[str, Counter[str]] = {c: Counter() for c in class_order}
    for ex in examples:
        if ex.label not in term_counts:
            raise DataError(
                f"example {ex.doc_id!r} has label {ex.label!r} "
                f"outside classes {class_order}"
            )
        doc_counts[ex.label] += 1
        term_counts[ex.label].update(ex.tokens.tokens)
    for c in class_order:
        if doc_counts[c] == 0:
            raise DataError(f"class {c!r} has no training documents")
    vocabulary = tuple(sorted(set().union(*(term_counts[c] for c in class_order))))
    if not vocabulary:
        raise DataError("empty vocabulary: no training document has any tokens")
    total_docs = len(examples)
    b = len(vocabulary)
    log_prior = {
        c: math.log(doc_counts[c] / total_docs) for c in class_order
    }
    log_cond = {}
    class_term_totals = {}
    for c in class_order:
        counts = term_counts[c]
        total = sum(counts.values())
        class_term_totals[c] = total
        denom_log = math.log(total + b)
        log_cond[c] = tuple(
            math.log(counts[t] + 1) - denom_log for t in vocabulary
        )
    return NBModel(
        classes=class_order,
        vocabulary=vocabulary,
        log_prior=log_prior,
        log_cond=log_cond,
        class_term_totals=class_term_totals,
    )


def predict(model: NBModel, tokens: TokenList) -> Prediction:
    """Maximum a posteriori class for one document.

    Tokens outside the training vocabulary are skipped; a document with
    no known tokens falls back to the priors.
    """
    priors = [model.log_prior[c] for c in model.classes]
    totals = accumulate_log_posteriors(tokens.tokens, priors, model._term_rows)
    best = 0
    for i in range(1, len(totals)):
        if totals[i] > totals[best]:
            best = i
    return Prediction(
        doc_id=tokens.doc_id,
        predicted=model.classes[best],
        log_posteriors=dict(zip(model.classes, totals)),
    )


def predict_corpus(
    model: NBModel, corpus_tokens: Iterable[TokenList]
) -> list[Prediction]:
    return [predict(model, tl) for tl in corpus_tokens]


def write_labeled_jsonl(labeled: Sequence[LabeledDoc], path) -> None:
    """One {doc_id, tokens, label} object per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for ex in labeled:
            obj = {
                "doc_id": ex.doc_id,
                "tokens": list(ex.tokens.tokens),
                "label": ex.label,
            }
            fh.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


def read_labeled_jsonl(path) -> list[LabeledDoc]:
    labeled = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path} line {lineno}: {exc}") from exc
            try:
                tokens = TokenList(
                    doc_id=str(obj["doc_id"]),
                    tokens=tuple(str(t) for t in obj["tokens"]),
                )
                labeled.append(LabeledDoc(tokens=tokens, label=str(obj["label"])))
            except (KeyError, TypeError) as exc:
                raise DataError(
                    f"{path} line {lineno}: not a labeled document: {exc}"
                ) from exc
    return labeled


def save_model(model: NBModel, path) -> None:
    """Write the model as versioned JSON with full float precision."""
    payload = {
        "version": MODEL_FORMAT_VERSION,
        "tie_break": TIE_BREAK_RULE,
        "classes": list(model.classes),
        "log_prior": {c: model.log_prior[c] for c in model.classes},
        "vocabulary": list(model.vocabulary),
        "log_cond": {c: list(model.log_cond[c]) for c in model.classes},
        "class_term_totals": {
            c: model.class_term_totals[c] for c in model.classes
        },
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        # repr round-trips floats exactly, so load(save(m)) == m bit for bit
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def load_model(path) -> NBModel:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file {path} is not valid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise ModelFormatError(f"model file {path} does not hold a JSON object")
    version = payload.get("version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"model file {path} has version {version!r}; "
            f"expected {MODEL_FORMAT_VERSION}"
        )
    try:
        classes = tuple(payload["classes"])
        vocabulary = tuple(payload["vocabulary"])
        model = NBModel(
            classes=classes,
            vocabulary=vocabulary,
            log_prior={c: float(payload["log_prior"][c]) for c in classes},
            log_cond={
                c: tuple(float(x) for x in payload["log_cond"][c])
                for c in classes
            },
            class_term_totals={
                c: int(payload["class_term_totals"][c]) for c in classes
            },
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ModelFormatError(f"model file {path} is malformed: {exc}") from exc
    for c in classes:
        if len(model.log_cond[c]) != len(vocabulary):
            raise ModelFormatError(
                f"model file {path}: log_cond for {c!r} has "
                f"{len(model.log_cond[c])} entries, expected {len(vocabulary)}"
            )
    return model
