"""Regenerate the frozen test fixtures in tests/fixtures.

Deterministic (fixed RNG seed): rerunning produces byte-identical
files.  The generated corpus is 200 noisy social-media style records
across three brands, with URLs, mentions, HTML entities, retweet
prefixes, hashtags and digits sprinkled in, and a sentiment mix that
leaves both classes present on both sides of the default 75/25 split.

Run from the repository root:  python tools/make_fixtures.py
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

POSITIVE_TEMPLATES = [
    "love this {product} it works great and smells amazing",
    "the new {product} from {brand} is excellent my skin feels soft and fresh",
    "this {product} healed my dry skin in 3 days wonderful",
    "best {product} ever gentle and effective highly recommend",
    "really happy with the {product} great quality and affordable",
    "my eczema improved thanks to this {product} feeling glad",
    "smooth soft skin after one week this {product} is brilliant",
    "the {product} is mild and calming perfect for sensitive skin",
    "love it soft and smooth skin thank you {brand}",
]

NEGATIVE_TEMPLATES = [
    "terrible rash and itching after using this {product}",
    "the {product} burned my skin awful reaction avoid it",
    "got hives and redness from the {product} worst purchase",
    "this {product} is useless made my skin dry and itchy",
    "allergic reaction to the {product} swelling and pain everywhere",
    "the {product} smells nasty and caused breakouts disappointed",
    "returned the {product} after my skin cracked and peeled awful",
    "harsh chemicals in this {product} gave me a painful sting",
    "awful experience rash everywhere regret buying from {brand}",
]

NEUTRAL_TEMPLATES = [
    "bought the {product} at the store yesterday",
    "does anyone know if the {product} ships overseas",
    "the {product} arrived today in a blue box",
    "good {product} but the rash came back",
    "using the {product} since last month results pending",
    "nice scent but my skin felt irritated",
    "placed an order last week waiting for delivery",
]

PRODUCTS = ["soap", "cream", "deodorant"]

USERS = ["jamie_r", "skatefan99", "lotionlover", "dermwatch", "pixie_m", "coupongal"]

BRANDS = [
    ("x", "Brand X", 70, (48, 8, 14)),
    ("y", "Brand Y", 70, (25, 25, 20)),
    ("z", "Brand Z", 60, (28, 12, 20)),
]


def decorate(text: str, rng: random.Random) -> str:
    if rng.random() < 0.30:
        text = f"RT @{rng.choice(USERS)} {text}"
    if rng.random() < 0.20:
        text = f"@{rng.choice(USERS)} {text}"
    if rng.random() < 0.15:
        text = text.replace(" and ", " &amp; ", 1)
    if rng.random() < 0.25:
        tail = "".join(rng.choice("abcdefghij0123456789") for _ in range(7))
        text = f"{text} https://t.co/{tail}"
    if rng.random() < 0.10:
        text = f"{text} 100% #skincare"
    if rng.random() < 0.08:
        text = f"{text} ❤"
    return text


def make_brand_records(
    prefix: str, brand: str, counts: tuple[int, int, int], rng: random.Random
) -> list[dict]:
    pools = [
        (POSITIVE_TEMPLATES, counts[0]),
        (NEGATIVE_TEMPLATES, counts[1]),
        (NEUTRAL_TEMPLATES, counts[2]),
    ]
    texts = []
    for templates, n in pools:
        for i in range(n):
            template = templates[i % len(templates)]
            text = template.format(
                product=rng.choice(PRODUCTS), brand=brand
            )
            texts.append(decorate(text, rng))
    rng.shuffle(texts)
    records = []
    for i, text in enumerate(texts, start=1):
        records.append(
            {
                "id": f"{prefix}{i:03d}",
                "text": text,
                "created_at": f"2021-03-{(i - 1) % 28 + 1:02d}T{(i * 7) % 24:02d}:00:00Z",
            }
        )
    return records


def write_jsonl(records: list[dict], path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(json.dumps(record, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


PIPELINE_TOML = """\
# Fixture pipeline configuration used by the test suite.
seed = 13
output_dir = "out"

[preprocess]
min_word_len = 3
remove_numbers = true
stemmer = "porter"

[matrix]
max_sparsity = 0.995

[split]
train_fraction = 0.75
shuffle = true

[products]
names = ["soap", "cream", "deodorant"]

[[sources]]
name = "brand_x"
path = "raw_brand_x.jsonl"
format = "jsonl"
brand = "Brand X"

[[sources]]
name = "brand_y"
path = "raw_brand_y.jsonl"
format = "jsonl"
brand = "Brand Y"

[[sources]]
name = "brand_z"
path = "raw_brand_z.jsonl"
format = "jsonl"
brand = "Brand Z"
"""

SIMPLE_JSONL = [
    {"id": "s1", "text": "first record"},
    {"id": "s2", "text": "second record"},
    {"id": "s3", "text": "third record"},
]


def write_static_fixtures() -> None:
    write_jsonl(SIMPLE_JSONL, FIXTURES / "simple.jsonl")
    with open(FIXTURES / "malformed.jsonl", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps({"id": "m1", "text": "fine one"}) + "\n")
        fh.write(json.dumps({"id": "m2", "text": "fine two"}) + "\n")
        fh.write("{this is not json\n")
        fh.write(json.dumps({"id": "m4", "text": "fine four"}) + "\n")
        fh.write(json.dumps({"id": "m5", "text": "fine five"}) + "\n")
    (FIXTURES / "pipeline.toml").write_text(PIPELINE_TOML, encoding="utf-8")


def validate() -> None:
    """Run the full pipeline over the generated fixtures and assert the
    invariants the test suite depends on.
    """
    import tempfile

    from sentilens.classifier import read_labeled_jsonl
    from sentilens.config import load_config
    from sentilens.corpus import read_corpus_jsonl
    from sentilens.evaluate import split
    from sentilens.pipeline import ArtifactPaths, run_pipeline

    with tempfile.TemporaryDirectory() as tmp:
        config = load_config(FIXTURES / "pipeline.toml", output_dir=tmp)
        run_pipeline(config)
        paths = ArtifactPaths(config.output_dir)
        corpus = read_corpus_jsonl(paths.corpus)
        assert corpus.N == 200, f"corpus N={corpus.N}, want 200"
        labeled = read_labeled_jsonl(paths.labeled)
        train_side, test_side = split(labeled, config.split)
        for side, name in ((train_side, "train"), (test_side, "test")):
            labels = {ex.label for ex in side}
            assert labels == {"positive", "negative"}, f"{name} side has {labels}"
        products = {doc.product for doc in corpus if doc.product}
        assert products == set(PRODUCTS), f"tagged products: {products}"
        print(
            f"ok: corpus {corpus.N}, labeled {len(labeled)} "
            f"(train {len(train_side)} / test {len(test_side)})"
        )


def main() -> int:
    rng = random.Random(2021)
    FIXTURES.mkdir(parents=True, exist_ok=True)
    for prefix, brand, total, counts in BRANDS:
        assert sum(counts) == total
        records = make_brand_records(prefix, brand, counts, rng)
        write_jsonl(records, FIXTURES / f"raw_brand_{prefix}.jsonl")
    write_static_fixtures()
    validate()
    return 0


if __name__ == "__main__":
    sys.exit(main())
