from __future__ import annotations

from pathlib import Path

import pytest

from sentilens.classifier import LabeledDoc, train
from sentilens.preprocess import PreprocessOptions, TokenList

FIXTURES = Path(__file__).resolve().parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def default_options() -> PreprocessOptions:
    return PreprocessOptions()


@pytest.fixture()
def toy_model():
    # positive doc ["good","good"], negative doc ["bad"]:
    # P(good|pos)=0.75, P(bad|pos)=0.25, P(good|neg)=1/3, P(bad|neg)=2/3
    examples = [
        LabeledDoc(TokenList(doc_id="p1", tokens=("good", "good")), "positive"),
        LabeledDoc(TokenList(doc_id="n1", tokens=("bad",)), "negative"),
    ]
    return train(examples, classes=("positive", "negative"))
