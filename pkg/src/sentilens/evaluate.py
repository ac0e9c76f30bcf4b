"""Evaluation utilities: train/test splitting, confusion matrices,
sentiment distributions, ratio summaries and score histograms.

Conventions worth knowing up front: the split size rounds half up (the
only rounding that sends 11431 docs at 0.75 to an 8573/2858 split);
confusion matrices put predicted classes on rows and actual classes on
columns, with per-cell fractions of the actual-class column total; and
quartiles use the median-of-halves rule, excluding the median itself
when the count is odd.
"""

from __future__ import annotations

import csv
import json
import math
import random
from collections import Counter
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass
from statistics import median
from typing import TypeVar

from sentilens.errors import ConfigError, DataError
from sentilens.lexicon import NEGATIVE, NEUTRAL, POSITIVE, SentimentScore

LABEL_ORDER = (NEGATIVE, NEUTRAL, POSITIVE)

T = TypeVar("T")


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class SplitSpec:
    train_fraction: float = 0.75
    seed: int = 13
    shuffle: bool = True

    def __post_init__(self):
        if not 0.0 < self.train_fraction < 1.0:
            raise ConfigError(
                f"train_fraction must be in (0, 1), got {self.train_fraction}"
            )


def split(examples: Sequence[T], spec: SplitSpec) -> tuple[list[T], list[T]]:
    """Partition examples into (train, test).

    Train size is floor(fraction * n + 0.5).  With shuffle on, the
    permutation comes from random.Random(seed), so a seed fixes the
    partition; with shuffle off the train side is the leading block in
    input order.
    """
    n = len(examples)
    if n < 2:
        raise DataError(f"need at least 2 examples to split, got {n}")
    train_size = _round_half_up(spec.train_fraction * n)
    if train_size == 0 or train_size == n:
        raise DataError(
            f"fraction {spec.train_fraction} leaves an empty side for n={n}"
        )
    indices = list(range(n))
    if spec.shuffle:
        random.Random(spec.seed).shuffle(indices)
    train = [examples[i] for i in indices[:train_size]]
    test = [examples[i] for i in indices[train_size:]]
    return train, test


@dataclass(frozen=True)
class ConfusionMatrix:
    classes: tuple[str, ...]
    # counts[predicted][actual]
    counts: dict[str, dict[str, int]]

    def count(self, predicted: str, actual: str) -> int:
        return self.counts[predicted][actual]

    def row_total(self, predicted: str) -> int:
        return sum(self.counts[predicted].values())

    def column_total(self, actual: str) -> int:
        return sum(self.counts[p][actual] for p in self.classes)

    @property
    def grand_total(self) -> int:
        return sum(self.row_total(p) for p in self.classes)

    @property
    def trace(self) -> int:
        return sum(self.counts[c][c] for c in self.classes)

    def column_fraction(self, predicted: str, actual: str) -> float:
        total = self.column_total(actual)
        if total == 0:
            return 0.0
        return self.counts[predicted][actual] / total


def confusion_from_counts(
    classes: Sequence[str], counts: Mapping[tuple[str, str], int]
) -> ConfusionMatrix:
    """Build a matrix directly from (predicted, actual) -> count pairs."""
    order = tuple(classes)
    table = {p: {a: 0 for a in order} for p in order}
    for (p, a), value in counts.items():
        if p not in table or a not in table:
            raise DataError(f"unknown class in counts: ({p!r}, {a!r})")
        if value < 0:
            raise DataError(f"negative count for ({p!r}, {a!r})")
        table[p][a] = int(value)
    return ConfusionMatrix(classes=order, counts=table)


def confusion(predictions: Sequence, truths: Sequence) -> ConfusionMatrix:
    """Cross-tabulate predictions against labeled truth.

    Both sequences must align by doc_id.  Class order follows the
    prediction's class order (its log_posteriors keys).
    """
    if not predictions:
        raise DataError("cannot build a confusion matrix from no predictions")
    if len(predictions) != len(truths):
        raise DataError(
            f"predictions/truths length mismatch: "
            f"{len(predictions)} vs {len(truths)}"
        )
    classes = tuple(predictions[0].log_posteriors)
    table = {p: {a: 0 for a in classes} for p in classes}
    for pred, truth in zip(predictions, truths):
        if pred.doc_id != truth.doc_id:
            raise DataError(
                f"doc_id mismatch: {pred.doc_id!r} vs {truth.doc_id!r}"
            )
        if truth.label not in table:
            raise DataError(
                f"label {truth.label!r} of {truth.doc_id!r} "
                f"outside classes {classes}"
            )
        table[pred.predicted][truth.label] += 1
    return ConfusionMatrix(classes=classes, counts=table)


def accuracy(matrix: ConfusionMatrix) -> float:
    total = matrix.grand_total
    if total == 0:
        raise DataError("accuracy undefined for an empty confusion matrix")
    return matrix.trace / total


@dataclass(frozen=True)
class DistributionTable:
    groups: tuple[str, ...]
    labels: tuple[str, ...]
    # counts[group][label]
    counts: dict[str, dict[str, int]]

    def count(self, group: str, label: str) -> int:
        return self.counts[group][label]

    def row_total(self, group: str) -> int:
        return sum(self.counts[group].values())

    def column_total(self, label: str) -> int:
        return sum(self.counts[g][label] for g in self.groups)

    @property
    def grand_total(self) -> int:
        return sum(self.row_total(g) for g in self.groups)

    def as_dict(self) -> dict:
        return {
            "labels": list(self.labels),
            "rows": [
                {
                    "group": g,
                    **{label: self.counts[g][label] for label in self.labels},
                    "total": self.row_total(g),
                }
                for g in self.groups
            ],
            "column_totals": {
                label: self.column_total(label) for label in self.labels
            },
            "grand_total": self.grand_total,
        }


def distribution(
    scores: Sequence[SentimentScore],
    group_of: Callable[[str], str] | Mapping[str, str],
) -> DistributionTable:
    """Count labels per group (brand, product, ...).

    Groups appear in order of first appearance.  Every doc_id must map
    to a group.
    """
    if isinstance(group_of, Mapping):
        mapping = group_of
        group_of = lambda doc_id: mapping[doc_id]  # noqa: E731
    groups: list[str] = []
    counts: dict[str, dict[str, int]] = {}
    for s in scores:
        try:
            group = group_of(s.doc_id)
        except KeyError:
            group = None
        if group is None:
            raise DataError(f"doc_id {s.doc_id!r} has no group mapping")
        if group not in counts:
            groups.append(group)
            counts[group] = {label: 0 for label in LABEL_ORDER}
        if s.label not in counts[group]:
            raise DataError(f"unexpected label {s.label!r} for {s.doc_id!r}")
        counts[group][s.label] += 1
    return DistributionTable(
        groups=tuple(groups), labels=LABEL_ORDER, counts=counts
    )


def ratio_summary(table: DistributionTable) -> dict[str, str]:
    """Per-group "1 : neutral/negative : positive/negative" with each
    quotient rounded half up; "n/a" when a group has no negatives.
    """
    ratios = {}
    for g in table.groups:
        neg = table.count(g, NEGATIVE)
        if neg == 0:
            ratios[g] = "n/a"
            continue
        neu = _round_half_up(table.count(g, NEUTRAL) / neg)
        pos = _round_half_up(table.count(g, POSITIVE) / neg)
        ratios[g] = f"1:{neu}:{pos}"
    return ratios


def compare_methods(
    lexicon_scores: Sequence[SentimentScore], ml_predictions: Sequence
) -> DistributionTable:
    """Label counts of the lexicon scorer vs the classifier over one
    corpus, as a two-row table (rows Lexicon and NB).
    """
    score_ids = {s.doc_id for s in lexicon_scores}
    pred_ids = {p.doc_id for p in ml_predictions}
    if score_ids != pred_ids:
        missing = score_ids ^ pred_ids
        sample = sorted(missing)[:5]
        raise DataError(
            f"score/prediction coverage differs on {len(missing)} doc_ids, "
            f"e.g. {sample}"
        )
    counts = {
        "Lexicon": {label: 0 for label in LABEL_ORDER},
        "NB": {label: 0 for label in LABEL_ORDER},
    }
    for s in lexicon_scores:
        counts["Lexicon"][s.label] += 1
    for p in ml_predictions:
        if p.predicted not in counts["NB"]:
            raise DataError(
                f"prediction label {p.predicted!r} is not one of {LABEL_ORDER}"
            )
        counts["NB"][p.predicted] += 1
    return DistributionTable(
        groups=("Lexicon", "NB"), labels=LABEL_ORDER, counts=counts
    )


@dataclass(frozen=True)
class FiveNumberSummary:
    minimum: float
    q1: float
    median: float
    q3: float
    maximum: float


@dataclass(frozen=True)
class Histogram:
    bins: tuple[tuple[int, int], ...]  # (score value, count), ascending
    summary: FiveNumberSummary | None

    @property
    def total(self) -> int:
        return sum(count for _, count in self.bins)


def _quartiles(values: Sequence[int]) -> tuple[float, float, float]:
    """Median-of-halves: odd-length inputs leave the median out of both
    halves; a single value is its own quartile.
    """
    mid = median(values)
    half = len(values) // 2
    if half == 0:
        return float(mid), float(mid), float(mid)
    lower = values[:half]
    upper = values[-half:]
    return float(median(lower)), float(mid), float(median(upper))


def histogram(scores: Sequence[SentimentScore]) -> Histogram:
    """One bin per distinct integer score, plus a five-number summary
    (absent for empty input).
    """
    values = sorted(s.score for s in scores)
    if not values:
        return Histogram(bins=(), summary=None)
    tally = Counter(values)
    bins = tuple((value, tally[value]) for value in sorted(tally))
    q1, mid, q3 = _quartiles(values)
    summary = FiveNumberSummary(
        minimum=float(values[0]),
        q1=q1,
        median=mid,
        q3=q3,
        maximum=float(values[-1]),
    )
    return Histogram(bins=bins, summary=summary)


def write_confusion_csv(matrix: ConfusionMatrix, path) -> None:
    """Counts with predicted rows, actual columns, trailing totals."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["predicted"] + [f"actual_{a}" for a in matrix.classes] + ["total"])
        for p in matrix.classes:
            row = [matrix.count(p, a) for a in matrix.classes]
            writer.writerow([p] + row + [matrix.row_total(p)])
        writer.writerow(
            ["total"]
            + [matrix.column_total(a) for a in matrix.classes]
            + [matrix.grand_total]
        )


def write_confusion_fractions_csv(matrix: ConfusionMatrix, path) -> None:
    """Per-cell fractions of each actual-class column total."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["predicted"] + [f"actual_{a}" for a in matrix.classes])
        for p in matrix.classes:
            writer.writerow(
                [p]
                + [f"{matrix.column_fraction(p, a):.6f}" for a in matrix.classes]
            )


def write_distribution_csv(table: DistributionTable, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["group"] + list(table.labels) + ["total"])
        for g in table.groups:
            row = [table.count(g, label) for label in table.labels]
            writer.writerow([g] + row + [table.row_total(g)])
        writer.writerow(
            ["total"]
            + [table.column_total(label) for label in table.labels]
            + [table.grand_total]
        )


def write_ratios_csv(ratios: Mapping[str, str], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["group", "negative:neutral:positive"])
        for group, ratio in ratios.items():
            writer.writerow([group, ratio])


def write_histogram_json(hist: Histogram, path) -> None:
    """Plot-ready JSON: ordered bins plus the five-number summary."""
    payload = {
        "bins": [{"score": value, "count": count} for value, count in hist.bins],
        "total": hist.total,
        "summary": None
        if hist.summary is None
        else {
            "min": hist.summary.minimum,
            "q1": hist.summary.q1,
            "median": hist.summary.median,
            "q3": hist.summary.q3,
            "max": hist.summary.maximum,
        },
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")
