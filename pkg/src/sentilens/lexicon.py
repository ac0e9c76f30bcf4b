"""Polarity lexicons and the word-count sentiment score.

A lexicon maps normalized terms to +1 or -1 with a provenance tag
(generic, domain or slang).  A document's score is the number of positive
tokens minus the number of negative tokens, occurrences counted each
time; the sign of the score gives the three-way label.
"""

from __future__ import annotations

import csv
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from importlib import resources

from sentilens._kernels import score_tokens
from sentilens.errors import ConfigError, DataError
from sentilens.preprocess import PreprocessOptions, TokenList

log = logging.getLogger(__name__)

SOURCE_TAGS = ("generic", "domain", "slang")

POSITIVE = "positive"
NEUTRAL = "neutral"
NEGATIVE = "negative"


def label_for(score: int) -> str:
    if score > 0:
        return POSITIVE
    if score < 0:
        return NEGATIVE
    return NEUTRAL


@dataclass(frozen=True)
class Lexicon:
    polarity: dict[str, int]  # term -> +1 / -1
    provenance: dict[str, str]  # term -> winning source tag
    override_count: int = 0

    def __len__(self) -> int:
        return len(self.polarity)

    def __contains__(self, term: str) -> bool:
        return term in self.polarity


@dataclass(frozen=True)
class SentimentScore:
    doc_id: str
    score: int
    label: str

    def __post_init__(self):
        if self.label != label_for(self.score):
            raise DataError(
                f"label {self.label!r} inconsistent with score {self.score}"
            )


def _read_word_file(path, options: PreprocessOptions | None) -> list[str]:
    # one word per line; '#' starts a comment, inline or full-line
    words = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.split("#", 1)[0].strip()
            if not word:
                continue
            word = word.lower()
            if options is not None:
                word = options.normalize_word(word)
            if word:
                words.append(word)
    return words


def load_lexicon(
    positive_path,
    negative_path,
    source_tag: str,
    options: PreprocessOptions | None = None,
) -> Lexicon:
    """Load a lexicon from two word-list files (one word per line, '#'
    comments).

    When `options` is given, entries are normalized exactly like corpus
    tokens (lowercase, same stemmer) so scoring compares like with like.
    A word ending up in both polarities is a conflict.
    """
    if source_tag not in SOURCE_TAGS:
        raise ConfigError(
            f"unknown lexicon source tag {source_tag!r}; expected one of {SOURCE_TAGS}"
        )
    polarity: dict[str, int] = {}
    for path, value in ((positive_path, 1), (negative_path, -1)):
        for word in _read_word_file(path, options):
            previous = polarity.get(word)
            if previous is not None and previous != value:
                raise DataError(
                    f"word {word!r} appears with both polarities "
                    f"({positive_path} / {negative_path})"
                )
            polarity[word] = value
    provenance = {term: source_tag for term in polarity}
    return Lexicon(polarity=polarity, provenance=provenance)


def bundled_lexicon(options: PreprocessOptions | None = None) -> Lexicon:
    """Generic English word lists with the slang overlay applied, from
    package data.  Pass the pipeline's PreprocessOptions so entries are
    normalized the same way as corpus tokens.
    """
    root = resources.files("sentilens").joinpath("data/lexicon")
    with resources.as_file(root) as folder:
        generic = load_lexicon(
            folder / "positive.txt", folder / "negative.txt", "generic", options
        )
        slang = load_lexicon(
            folder / "slang_positive.txt",
            folder / "slang_negative.txt",
            "slang",
            options,
        )
    return merge_lexicons(generic, [slang])


def merge_lexicons(base: Lexicon, overlays: Sequence[Lexicon]) -> Lexicon:
    """Merge overlays onto a base lexicon; later entries win on conflicts.

    Overrides are silent but counted (`override_count`) and logged.
    """
    polarity = dict(base.polarity)
    provenance = dict(base.provenance)
    overrides = 0
    for overlay in overlays:
        for term, value in overlay.polarity.items():
            if term in polarity:
                overrides += 1
            polarity[term] = value
            provenance[term] = overlay.provenance[term]
    if overrides:
        log.info("lexicon merge overrode %d existing entries", overrides)
    return Lexicon(polarity=polarity, provenance=provenance, override_count=overrides)


def score(tokens: TokenList, lexicon: Lexicon) -> SentimentScore:
    """Positive-minus-negative occurrence count for one document."""
    value = score_tokens(tokens.tokens, lexicon.polarity)
    return SentimentScore(doc_id=tokens.doc_id, score=value, label=label_for(value))


def score_corpus(
    corpus_tokens: Iterable[TokenList], lexicon: Lexicon
) -> list[SentimentScore]:
    return [score(tl, lexicon) for tl in corpus_tokens]


def write_scores_csv(scores: Sequence[SentimentScore], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["doc_id", "score", "label"])
        for s in scores:
            writer.writerow([s.doc_id, s.score, s.label])


def read_scores_csv(path) -> list[SentimentScore]:
    scores = []
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["doc_id", "score", "label"]:
            raise DataError(f"unexpected scores header in {path}: {header}")
        for row in reader:
            if len(row) != 3:
                raise DataError(f"malformed scores row in {path}: {row}")
            scores.append(
                SentimentScore(doc_id=row[0], score=int(row[1]), label=row[2])
            )
    return scores


def write_lexicon_tsv(lexicon: Lexicon, path) -> None:
    """Merged-lexicon export: term, polarity, provenance; sorted by term."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for term in sorted(lexicon.polarity):
            fh.write(f"{term}\t{lexicon.polarity[term]:+d}\t{lexicon.provenance[term]}\n")
