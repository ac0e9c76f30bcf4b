"""Lexicon loading, merging, and word-count scoring."""

from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sentilens.errors import ConfigError, DataError
from sentilens.lexicon import (
    NEGATIVE,
    NEUTRAL,
    POSITIVE,
    Lexicon,
    SentimentScore,
    bundled_lexicon,
    label_for,
    load_lexicon,
    merge_lexicons,
    read_scores_csv,
    score,
    score_corpus,
    write_lexicon_tsv,
    write_scores_csv,
)
from sentilens.preprocess import PreprocessOptions, TokenList


def lexicon_files(tmp_path, positive: str, negative: str):
    pos = tmp_path / "pos.txt"
    neg = tmp_path / "neg.txt"
    pos.write_text(positive, encoding="utf-8")
    neg.write_text(negative, encoding="utf-8")
    return pos, neg


class TestLoadLexicon:
    def test_basic_load(self, tmp_path):
        pos, neg = lexicon_files(tmp_path, "good\nGREAT\n", "bad\n")
        lex = load_lexicon(pos, neg, "generic")
        assert lex.polarity == {"good": 1, "great": 1, "bad": -1}
        assert lex.provenance == {"good": "generic", "great": "generic", "bad": "generic"}
        assert lex.override_count == 0
        assert len(lex) == 3
        assert "good" in lex and "meh" not in lex

    def test_comments_and_blanks(self, tmp_path):
        pos, neg = lexicon_files(
            tmp_path, "# header\ngood  # praise\n\n", "bad\n#bad-ish\n"
        )
        lex = load_lexicon(pos, neg, "generic")
        assert lex.polarity == {"good": 1, "bad": -1}

    def test_normalized_like_tokens(self, tmp_path):
        pos, neg = lexicon_files(tmp_path, "Loved\nloving\n", "failing\n")
        lex = load_lexicon(pos, neg, "generic", PreprocessOptions())
        assert lex.polarity == {"love": 1, "fail": -1}

    def test_conflict_within_one_source(self, tmp_path):
        pos, neg = lexicon_files(tmp_path, "fine\n", "fine\n")
        with pytest.raises(DataError, match="'fine'"):
            load_lexicon(pos, neg, "generic")

    def test_normalization_can_create_conflicts(self, tmp_path):
        # distinct surface forms, same stem on both sides
        pos, neg = lexicon_files(tmp_path, "caring\n", "cared\n")
        with pytest.raises(DataError, match="'care'"):
            load_lexicon(pos, neg, "generic", PreprocessOptions())

    def test_duplicate_same_polarity_is_fine(self, tmp_path):
        pos, neg = lexicon_files(tmp_path, "good\ngood\n", "bad\n")
        assert len(load_lexicon(pos, neg, "generic")) == 2

    def test_unknown_source_tag(self, tmp_path):
        pos, neg = lexicon_files(tmp_path, "good\n", "bad\n")
        with pytest.raises(ConfigError, match="source tag"):
            load_lexicon(pos, neg, "market-research")


class TestMerge:
    def test_later_overlay_wins(self):
        base = Lexicon({"sick": -1, "good": 1}, {"sick": "generic", "good": "generic"})
        slang = Lexicon({"sick": 1, "lit": 1}, {"sick": "slang", "lit": "slang"})
        merged = merge_lexicons(base, [slang])
        assert merged.polarity == {"sick": 1, "good": 1, "lit": 1}
        assert merged.provenance["sick"] == "slang"
        assert merged.provenance["good"] == "generic"
        assert merged.override_count == 1

    def test_same_value_still_counts_as_override(self):
        base = Lexicon({"good": 1}, {"good": "generic"})
        dom = Lexicon({"good": 1}, {"good": "domain"})
        merged = merge_lexicons(base, [dom])
        assert merged.override_count == 1
        assert merged.provenance["good"] == "domain"

    def test_overlay_order_matters(self):
        base = Lexicon({}, {})
        a = Lexicon({"x": 1}, {"x": "domain"})
        b = Lexicon({"x": -1}, {"x": "slang"})
        assert merge_lexicons(base, [a, b]).polarity["x"] == -1
        assert merge_lexicons(base, [b, a]).polarity["x"] == 1


class TestBundled:
    def test_loads_and_applies_slang_overlay(self, default_options):
        lex = bundled_lexicon(default_options)
        assert len(lex) > 150
        assert lex.override_count >= 1
        # "sick" is negative generically, positive as slang
        assert lex.polarity["sick"] == 1
        assert lex.provenance["sick"] == "slang"
        assert lex.polarity[default_options.normalize_word("rash")] == -1
        assert lex.polarity[default_options.normalize_word("loved")] == 1

    def test_no_cross_polarity_stem_collisions(self, default_options):
        # loading raises on any conflict, so constructing it is the test
        bundled_lexicon(default_options)
        bundled_lexicon(None)


class TestScoring:
    lex = Lexicon(
        {"good": 1, "great": 1, "bad": -1, "awful": -1},
        {"good": "generic", "great": "generic", "bad": "generic", "awful": "generic"},
    )

    def test_counts_every_occurrence(self):
        s = score(TokenList("d1", ("good", "good", "bad", "unknown")), self.lex)
        assert s == SentimentScore("d1", 1, POSITIVE)

    def test_sign_gives_label(self):
        assert score(TokenList("a", ("bad",)), self.lex).label == NEGATIVE
        assert score(TokenList("b", ()), self.lex).label == NEUTRAL
        assert score(TokenList("c", ("good", "bad")), self.lex) == SentimentScore(
            "c", 0, NEUTRAL
        )

    def test_score_corpus_keeps_order(self):
        scores = score_corpus(
            [TokenList("d2", ("bad",)), TokenList("d1", ("good",))], self.lex
        )
        assert [s.doc_id for s in scores] == ["d2", "d1"]

    def test_label_for(self):
        assert label_for(3) == POSITIVE
        assert label_for(0) == NEUTRAL
        assert label_for(-2) == NEGATIVE

    def test_inconsistent_sentiment_score_rejected(self):
        with pytest.raises(DataError, match="inconsistent"):
            SentimentScore("d", 2, NEGATIVE)

    tokens_strategy = st.lists(
        st.sampled_from(["good", "great", "bad", "awful", "zzz"]), max_size=30
    )

    @given(tokens_strategy)
    def test_matches_brute_force(self, tokens):
        expected = sum(self.lex.polarity.get(t, 0) for t in tokens)
        assert score(TokenList("d", tuple(tokens)), self.lex).score == expected

    @given(tokens_strategy, tokens_strategy)
    def test_additive_over_concatenation(self, left, right):
        s = score(TokenList("d", tuple(left + right)), self.lex)
        sl = score(TokenList("d", tuple(left)), self.lex)
        sr = score(TokenList("d", tuple(right)), self.lex)
        assert s.score == sl.score + sr.score

    @given(tokens_strategy)
    def test_polarity_flip_negates(self, tokens):
        flipped = Lexicon(
            {t: -v for t, v in self.lex.polarity.items()}, dict(self.lex.provenance)
        )
        assert (
            score(TokenList("d", tuple(tokens)), flipped).score
            == -score(TokenList("d", tuple(tokens)), self.lex).score
        )

    @given(tokens_strategy)
    def test_bounded_by_length(self, tokens):
        assert abs(score(TokenList("d", tuple(tokens)), self.lex).score) <= len(tokens)


class TestScoresCsv:
    def test_round_trip_and_bytes(self, tmp_path):
        scores = [
            SentimentScore("a", 2, POSITIVE),
            SentimentScore("b", -1, NEGATIVE),
            SentimentScore("c", 0, NEUTRAL),
        ]
        path = tmp_path / "scores.csv"
        write_scores_csv(scores, path)
        assert path.read_bytes() == (
            b"doc_id,score,label\na,2,positive\nb,-1,negative\nc,0,neutral\n"
        )
        assert read_scores_csv(path) == scores

    def test_read_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "scores.csv"
        path.write_text("id,score\n", encoding="utf-8")
        with pytest.raises(DataError, match="header"):
            read_scores_csv(path)

    def test_read_rejects_short_row(self, tmp_path):
        path = tmp_path / "scores.csv"
        path.write_text("doc_id,score,label\na,1\n", encoding="utf-8")
        with pytest.raises(DataError, match="malformed"):
            read_scores_csv(path)


def test_lexicon_tsv_export(tmp_path):
    lex = Lexicon(
        {"bad": -1, "ace": 1}, {"bad": "generic", "ace": "slang"}, override_count=0
    )
    path = tmp_path / "lexicon.tsv"
    write_lexicon_tsv(lex, path)
    assert path.read_bytes() == b"ace\t+1\tslang\nbad\t-1\tgeneric\n"
