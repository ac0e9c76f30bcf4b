"""Naive Bayes training, prediction, and model persistence."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sentilens.classifier import (
    LabeledDoc,
    NBModel,
    bootstrap_labels,
    load_model,
    predict,
    predict_corpus,
    read_labeled_jsonl,
    save_model,
    train,
    write_labeled_jsonl,
)
from sentilens.errors import DataError, ModelFormatError
from sentilens.lexicon import NEGATIVE, POSITIVE, SentimentScore
from sentilens.preprocess import TokenList


def labeled(doc_id: str, label: str, *tokens: str) -> LabeledDoc:
    return LabeledDoc(tokens=TokenList(doc_id, tokens), label=label)


class TestBootstrap:
    def test_sign_to_label_and_zero_dropped(self):
        scores = [
            SentimentScore("a", 2, "positive"),
            SentimentScore("b", 0, "neutral"),
            SentimentScore("c", -1, "negative"),
        ]
        tokens = [TokenList(i, (i,)) for i in ("a", "b", "c")]
        out = bootstrap_labels(scores, tokens)
        assert [(ex.doc_id, ex.label) for ex in out] == [
            ("a", POSITIVE),
            ("c", NEGATIVE),
        ]

    def test_length_mismatch(self):
        with pytest.raises(DataError, match="length mismatch"):
            bootstrap_labels([SentimentScore("a", 1, "positive")], [])

    def test_doc_id_mismatch(self):
        with pytest.raises(DataError, match="doc_id mismatch"):
            bootstrap_labels(
                [SentimentScore("a", 1, "positive")], [TokenList("b", ())]
            )


class TestTrain:
    def test_toy_model_probabilities(self, toy_model):
        # 2 docs: ("good","good")->positive, ("bad",)->negative
        m = toy_model
        assert m.classes == ("positive", "negative")
        assert m.vocabulary == ("bad", "good")
        assert m.B == 2
        assert m.log_prior["positive"] == math.log(0.5)
        # positive: T(good)=2, total=2, B=2 -> (2+1)/(2+2) = 0.75
        good_i = m.vocabulary.index("good")
        bad_i = m.vocabulary.index("bad")
        assert m.log_cond["positive"][good_i] == pytest.approx(math.log(0.75), rel=1e-15)
        assert m.log_cond["positive"][bad_i] == pytest.approx(math.log(0.25), rel=1e-15)
        # negative: T(bad)=1, total=1 -> (1+1)/(1+2) = 2/3, (0+1)/3 = 1/3
        assert m.log_cond["negative"][bad_i] == pytest.approx(math.log(2 / 3), rel=1e-15)
        assert m.log_cond["negative"][good_i] == pytest.approx(math.log(1 / 3), rel=1e-15)
        assert m.class_term_totals == {"positive": 2, "negative": 1}

    def test_default_classes_sorted(self):
        m = train([labeled("a", "z-label", "t"), labeled("b", "a-label", "t")])
        assert m.classes == ("a-label", "z-label")

    def test_example_order_invariance(self):
        ex = [
            labeled("a", "positive", "good", "fine"),
            labeled("b", "negative", "bad"),
            labeled("c", "positive", "good"),
        ]
        assert train(ex) == train(list(reversed(ex)))

    def test_empty_examples(self):
        with pytest.raises(DataError, match="empty example list"):
            train([])

    def test_duplicate_classes(self):
        with pytest.raises(DataError, match="duplicate class"):
            train([labeled("a", "x", "t")], classes=("x", "x"))

    def test_label_outside_classes(self):
        with pytest.raises(DataError, match="outside classes"):
            train([labeled("a", "stray", "t")], classes=("positive", "negative"))

    def test_class_without_documents(self):
        with pytest.raises(DataError, match="'negative' has no training documents"):
            train([labeled("a", "positive", "t")], classes=("positive", "negative"))

    def test_all_token_lists_empty(self):
        with pytest.raises(DataError, match="empty vocabulary"):
            train([labeled("a", "positive"), labeled("b", "negative")])


class TestPredict:
    def test_posteriors_and_argmax(self, toy_model):
        p = predict(toy_model, TokenList("q", ("good", "good", "bad")))
        expected_pos = math.log(0.5) + 2 * math.log(0.75) + math.log(0.25)
        expected_neg = math.log(0.5) + 2 * math.log(1 / 3) + math.log(2 / 3)
        assert p.predicted == "positive"
        assert p.log_posteriors["positive"] == pytest.approx(expected_pos, rel=1e-15)
        assert p.log_posteriors["negative"] == pytest.approx(expected_neg, rel=1e-15)

    def test_oov_tokens_skipped(self, toy_model):
        with_oov = predict(toy_model, TokenList("q", ("good", "mystery")))
        without = predict(toy_model, TokenList("q", ("good",)))
        assert with_oov.log_posteriors == without.log_posteriors

    def test_all_oov_falls_back_to_priors(self, toy_model):
        p = predict(toy_model, TokenList("q", ("mystery", "unseen")))
        assert p.log_posteriors["positive"] == math.log(0.5)
        assert p.log_posteriors["negative"] == math.log(0.5)
        assert p.predicted == "positive"  # tie -> first class in order

    def test_tie_break_follows_class_order(self):
        ex = [labeled("a", "positive", "same"), labeled("b", "negative", "same")]
        first_pos = train(ex, classes=("positive", "negative"))
        first_neg = train(ex, classes=("negative", "positive"))
        doc = TokenList("q", ("same",))
        assert predict(first_pos, doc).predicted == "positive"
        assert predict(first_neg, doc).predicted == "negative"

    def test_predict_corpus_keeps_order(self, toy_model):
        preds = predict_corpus(
            toy_model, [TokenList("y", ("bad",)), TokenList("x", ("good",))]
        )
        assert [p.doc_id for p in preds] == ["y", "x"]
        assert [p.predicted for p in preds] == ["negative", "positive"]

    @given(
        st.lists(
            st.sampled_from(["good", "nice", "bad", "sad", "zzz"]),
            max_size=12,
        )
    )
    def test_posteriors_normalize(self, tokens):
        model = train(
            [
                labeled("a", "positive", "good", "nice", "good"),
                labeled("b", "negative", "bad", "sad"),
                labeled("c", "positive", "nice"),
            ]
        )
        p = predict(model, TokenList("q", tuple(tokens)))
        # joint log-likelihoods: exp-normalizing over classes must give
        # a probability distribution
        total = sum(math.exp(v) for v in p.log_posteriors.values())
        posteriors = {c: math.exp(v) / total for c, v in p.log_posteriors.items()}
        assert sum(posteriors.values()) == pytest.approx(1.0, abs=1e-9)
        assert max(posteriors, key=posteriors.get) == p.predicted

    def test_adding_positive_evidence_is_monotone(self, toy_model):
        margins = []
        for k in range(4):
            p = predict(toy_model, TokenList("q", ("good",) * k))
            margins.append(p.log_posteriors["positive"] - p.log_posteriors["negative"])
        assert margins == sorted(margins)
        assert margins[0] == 0.0


class TestPersistence:
    def test_round_trip_is_exact(self, tmp_path, toy_model):
        path = tmp_path / "model.json"
        save_model(toy_model, path)
        loaded = load_model(path)
        assert loaded == toy_model
        doc = TokenList("q", ("good", "bad", "good"))
        before = predict(toy_model, doc)
        after = predict(loaded, doc)
        assert before.log_posteriors == after.log_posteriors  # bit identical
        assert before.predicted == after.predicted

    def test_save_is_deterministic(self, tmp_path, toy_model):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        save_model(toy_model, a)
        save_model(toy_model, b)
        assert a.read_bytes() == b.read_bytes()

    def test_rejects_wrong_version(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text('{"version": 99}', encoding="utf-8")
        with pytest.raises(ModelFormatError, match="version 99"):
            load_model(path)

    def test_rejects_truncated_json(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text('{"version": 1, "classes": ["po', encoding="utf-8")
        with pytest.raises(ModelFormatError, match="not valid JSON"):
            load_model(path)

    def test_rejects_missing_field(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text('{"version": 1, "classes": ["a"]}', encoding="utf-8")
        with pytest.raises(ModelFormatError, match="malformed"):
            load_model(path)

    def test_rejects_log_cond_length_mismatch(self, tmp_path, toy_model):
        import json

        path = tmp_path / "model.json"
        save_model(toy_model, path)
        payload = json.loads(path.read_text(encoding="utf-8"))
        payload["log_cond"]["positive"] = payload["log_cond"]["positive"][:1]
        path.write_text(json.dumps(payload), encoding="utf-8")
        with pytest.raises(ModelFormatError, match="expected 2"):
            load_model(path)

    def test_rejects_non_object(self, tmp_path):
        path = tmp_path / "model.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ModelFormatError, match="JSON object"):
            load_model(path)


class TestLabeledJsonl:
    def test_round_trip_and_bytes(self, tmp_path):
        examples = [
            labeled("a", "positive", "good", "héllo"),
            labeled("b", "negative"),
        ]
        path = tmp_path / "labeled.jsonl"
        write_labeled_jsonl(examples, path)
        assert path.read_bytes() == (
            '{"doc_id":"a","tokens":["good","héllo"],"label":"positive"}\n'
            '{"doc_id":"b","tokens":[],"label":"negative"}\n'
        ).encode("utf-8")
        assert read_labeled_jsonl(path) == examples

    def test_read_rejects_bad_json(self, tmp_path):
        path = tmp_path / "labeled.jsonl"
        path.write_text("{nope\n", encoding="utf-8")
        with pytest.raises(DataError, match="line 1"):
            read_labeled_jsonl(path)

    def test_read_rejects_missing_keys(self, tmp_path):
        path = tmp_path / "labeled.jsonl"
        path.write_text('{"doc_id":"a"}\n', encoding="utf-8")
        with pytest.raises(DataError, match="not a labeled document"):
            read_labeled_jsonl(path)
