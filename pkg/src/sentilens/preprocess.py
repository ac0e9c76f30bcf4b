"""Tokenization and the tf-idf document-term matrix.

Turns cleaned document text into normalized token lists (lowercase,
number/stop-word removal, optional Porter stemming, minimum word length)
and assembles a sparse matrix of tf-idf weights with base-2 idf:

    weight(d, t) = tf(d, t) * log2(N / df(t))

Terms present in every document get weight 0 and their cells are not
stored; sparsity pruning then drops terms that appear in too few
documents.
"""

from __future__ import annotations

import csv
import math
import re
from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from sentilens._kernels import porter_stem
from sentilens.errors import ConfigError, DataError

# word characters minus underscore = unicode alphanumeric runs
_TOKEN_RE = re.compile(r"[^\W_]+")

STEMMERS = ("none", "porter")


def load_stop_words(path) -> frozenset[str]:
    """Read a stop-word file: one word per line, '#' lines are comments."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if word and not word.startswith("#"):
                words.add(word.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def default_stop_words() -> frozenset[str]:
    """The bundled English stop-word list."""
    text = resources.files("sentilens").joinpath("data/stopwords_en.txt").read_text("utf-8")
    return frozenset(
        line.strip().lower()
        for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )


@dataclass(frozen=True)
class PreprocessOptions:
    min_word_len: int = 3
    stop_words: frozenset[str] = field(default_factory=default_stop_words)
    stemmer: str = "porter"
    remove_numbers: bool = True
    lowercase: bool = True

    def __post_init__(self):
        if self.min_word_len < 1:
            raise ConfigError(f"min_word_len must be >= 1, got {self.min_word_len}")
        if self.stemmer not in STEMMERS:
            raise ConfigError(f"unknown stemmer {self.stemmer!r}; expected one of {STEMMERS}")

    def normalize_word(self, word: str) -> str:
        """Apply the same case/stemming normalization used for tokens.

        Used to bring lexicon entries onto the token alphabet; length and
        stop-word filters are intentionally not applied here.
        """
        if self.lowercase:
            word = word.lower()
        if self.stemmer == "porter":
            word = porter_stem(word)
        return word


@dataclass(frozen=True)
class TokenList:
    doc_id: str
    tokens: tuple[str, ...]

    @property
    def n_d(self) -> int:
        return len(self.tokens)


def tokenize(text: str, options: PreprocessOptions, doc_id: str = "") -> TokenList:
    """Split cleaned text into normalized tokens.

    Pipeline: split on non-alphanumeric delimiters, lowercase, drop
    digit-bearing tokens, drop stop words, stem, then drop tokens shorter
    than `min_word_len` (length is checked after stemming).
    """
    out = []
    for tok in _TOKEN_RE.findall(text):
        if options.lowercase:
            tok = tok.lower()
        if options.remove_numbers and any(ch.isdigit() for ch in tok):
            continue
        if tok in options.stop_words:
            continue
        if options.stemmer == "porter":
            tok = porter_stem(tok)
        if len(tok) < options.min_word_len:
            continue
        out.append(tok)
    return TokenList(doc_id=doc_id, tokens=tuple(out))


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]  # lexicographically sorted
    df: Mapping[str, int]
    N: int

    def __contains__(self, term: str) -> bool:
        return term in self.df


@dataclass(frozen=True)
class DocTermMatrix:
    doc_ids: tuple[str, ...]
    vocabulary: Vocabulary
    tf: Mapping[str, Mapping[str, int]]  # doc_id -> term -> raw count
    weights: Mapping[str, Mapping[str, float]]  # zero-weight cells unstored

    @property
    def N(self) -> int:
        return self.vocabulary.N

    def tf_of(self, doc_id: str, term: str) -> int:
        return self.tf.get(doc_id, {}).get(term, 0)

    def weight_of(self, doc_id: str, term: str) -> float:
        return self.weights.get(doc_id, {}).get(term, 0.0)

    def term_totals(self) -> dict[str, int]:
        """Total raw occurrence count of each vocabulary term."""
        totals = Counter()
        for counts in self.tf.values():
            totals.update(counts)
        return {t: totals.get(t, 0) for t in self.vocabulary.terms}


def build_matrix(corpus_tokens: Sequence[TokenList]) -> DocTermMatrix:
    """Assemble the tf-idf matrix over a tokenized corpus.

    N counts every TokenList, including empty ones.  Raises DataError
    when no document contributes a single token.
    """
    n = len(corpus_tokens)
    doc_ids = []
    tf: dict[str, dict[str, int]] = {}
    df = Counter()
    for tl in corpus_tokens:
        if tl.doc_id in tf:
            raise DataError(f"duplicate document id {tl.doc_id!r}")
        doc_ids.append(tl.doc_id)
        counts = Counter(tl.tokens)
        tf[tl.doc_id] = dict(counts)
        df.update(counts.keys())
    if not df:
        raise DataError("empty vocabulary")
    terms = tuple(sorted(df))
    vocab = Vocabulary(terms=terms, df=dict(df), N=n)
    idf = {t: math.log2(n / df[t]) for t in terms}
    weights = {}
    for doc_id in doc_ids:
        row = {}
        for term, count in tf[doc_id].items():
            w = count * idf[term]
            if w != 0.0:
                row[term] = w
        weights[doc_id] = row
    return DocTermMatrix(
        doc_ids=tuple(doc_ids), vocabulary=vocab, tf=tf, weights=weights
    )


def prune_sparse(matrix: DocTermMatrix, max_sparsity: float = 0.99) -> DocTermMatrix:
    """Drop terms whose sparsity exceeds `max_sparsity`.

    A term is retained when df(t)/N >= 1 - max_sparsity; df, weights and N
    of the survivors are unchanged.  Raises DataError when nothing
    survives.
    """
    if not 0.0 <= max_sparsity < 1.0:
        raise ConfigError(f"max_sparsity must be in [0, 1), got {max_sparsity}")
    n = matrix.N
    # epsilon guards against float noise at exact percentage boundaries
    threshold = (1.0 - max_sparsity) * n - 1e-9
    keep = {t for t in matrix.vocabulary.terms if matrix.vocabulary.df[t] >= threshold}
    if not keep:
        raise DataError("empty vocabulary after pruning")
    terms = tuple(t for t in matrix.vocabulary.terms if t in keep)
    vocab = Vocabulary(
        terms=terms, df={t: matrix.vocabulary.df[t] for t in terms}, N=n
    )
    tf = {
        doc_id: {t: c for t, c in counts.items() if t in keep}
        for doc_id, counts in matrix.tf.items()
    }
    weights = {
        doc_id: {t: w for t, w in row.items() if t in keep}
        for doc_id, row in matrix.weights.items()
    }
    return DocTermMatrix(doc_ids=matrix.doc_ids, vocabulary=vocab, tf=tf, weights=weights)


def frequent_terms(matrix: DocTermMatrix, top_k: int) -> list[tuple[str, int]]:
    """Top terms by total occurrence count, ties broken alphabetically."""
    if top_k < 1:
        raise ConfigError(f"top_k must be >= 1, got {top_k}")
    totals = matrix.term_totals()
    ranked = sorted(totals.items(), key=lambda kv: (-kv[1], kv[0]))
    return ranked[:top_k]


def write_matrix_csv(matrix: DocTermMatrix, path) -> None:
    """Sparse triplet export: one row per stored tf cell, in document order
    then term order; ubiquitous terms appear with weight 0.0."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["doc_id", "term", "tf", "weight"])
        for doc_id in matrix.doc_ids:
            counts = matrix.tf[doc_id]
            for term in sorted(counts):
                writer.writerow(
                    [doc_id, term, counts[term], repr(matrix.weight_of(doc_id, term))]
                )


def write_vocabulary_csv(matrix: DocTermMatrix, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["term", "df"])
        for term in matrix.vocabulary.terms:
            writer.writerow([term, matrix.vocabulary.df[term]])


def read_token_lists(rows: Iterable[tuple[str, Sequence[str]]]) -> list[TokenList]:
    """Build TokenLists from (doc_id, tokens) pairs, e.g. parsed JSONL."""
    return [TokenList(doc_id=doc_id, tokens=tuple(tokens)) for doc_id, tokens in rows]
