"""Turn raw records into a cleaned, deduplicated document corpus.

Cleaning decodes HTML entities, strips URLs, @-mentions, a leading
retweet marker and control characters, and collapses whitespace.  The
rules are applied repeatedly until the text stops changing, which makes
clean_text idempotent even when one removal exposes another
(entity-encoded entities, stacked retweet markers).
"""

from __future__ import annotations

import html
import json
import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, replace

from sentilens.collector import RawRecord
from sentilens.errors import DataError

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+")
_CONTROL_RE = re.compile(r"[\x00-\x1f\x7f]")
_SPACE_RE = re.compile(r"\s+")
_RT_PREFIX_RE = re.compile(r"^RT(?:\s+|$)")

def _clean_pass(text: str) -> str:
    text = html.unescape(text)
    text = _URL_RE.sub(" ", text)
    text = _MENTION_RE.sub(" ", text)
    text = _CONTROL_RE.sub(" ", text)
    text = _SPACE_RE.sub(" ", text).strip()
    return _RT_PREFIX_RE.sub("", text)


def clean_text(raw_text: str) -> str:
    """Normalize one raw post into plain search-ready text.

    Total function: any string in, a cleaned (possibly empty) string
    out.
    """
    # terminates: a changing pass shrinks (length, control-char count)
    # lexicographically, so the fixpoint is reached in <= len passes
    text = raw_text
    while True:
        cleaned = _clean_pass(text)
        if cleaned == text:
            return cleaned
        text = cleaned


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    source: str
    brand: str | None = None
    product: str | None = None
    created_at: str | None = None


@dataclass(frozen=True)
class Corpus:
    documents: tuple[Document, ...]

    @property
    def N(self) -> int:
        return len(self.documents)

    def __iter__(self):
        return iter(self.documents)

    def __len__(self) -> int:
        return len(self.documents)


DEFAULT_FIELD_MAP = {"id": "id", "text": "text"}


def _json_path(payload, path: str):
    node = payload
    for key in path.split("."):
        if not isinstance(node, dict) or key not in node:
            return None
        node = node[key]
    return node


def parse_record(
    record: RawRecord,
    field_map: Mapping[str, str] = DEFAULT_FIELD_MAP,
    *,
    brand: str | None = None,
    product: str | None = None,
) -> Document:
    """Extract a cleaned Document from a raw payload.

    `field_map` maps the semantic fields (id, text, optionally
    created_at) to dotted JSON paths inside the payload.  Brand and
    product labels come from the caller (the ingestion config), not the
    payload.
    """
    payload = record.parsed()
    id_path = field_map.get("id", "id")
    text_path = field_map.get("text", "text")
    raw_id = _json_path(payload, id_path)
    if raw_id is None:
        raise DataError(f"{id_path} path not found in record payload")
    raw_text = _json_path(payload, text_path)
    if raw_text is None:
        raise DataError(f"{text_path} path not found in record payload")
    if not isinstance(raw_text, str):
        raise DataError(f"value at {text_path} is not a string")
    created_at = None
    if "created_at" in field_map:
        value = _json_path(payload, field_map["created_at"])
        if value is not None:
            created_at = str(value)
    return Document(
        id=str(raw_id),
        text=clean_text(raw_text),
        source=record.source,
        brand=brand,
        product=product,
        created_at=created_at,
    )


def detect_product(text: str, products: Sequence[str]) -> str | None:
    """First product whose name occurs in the text, case-insensitive;
    listing order sets precedence.
    """
    lowered = text.lower()
    for product in products:
        if product.lower() in lowered:
            return product
    return None


def tag_products(documents: Iterable[Document], products: Sequence[str]) -> list[Document]:
    """Fill in the product label by mention search on cleaned text.

    Documents that already carry a product label keep it.
    """
    tagged = []
    for doc in documents:
        if doc.product is None:
            found = detect_product(doc.text, products)
            if found is not None:
                doc = replace(doc, product=found)
        tagged.append(doc)
    return tagged


def build_corpus(documents: Iterable[Document]) -> Corpus:
    """Drop duplicate ids (first wins) and empty-text documents,
    preserving order otherwise.
    """
    seen: set[str] = set()
    kept = []
    for doc in documents:
        if not doc.id:
            raise DataError("document with empty id")
        if doc.id in seen or not doc.text:
            continue
        seen.add(doc.id)
        kept.append(doc)
    return Corpus(documents=tuple(kept))


_DOC_FIELDS = ("id", "text", "source", "brand", "product", "created_at")


def write_corpus_jsonl(corpus: Corpus, path) -> None:
    """Canonical interchange format: one Document object per line."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for doc in corpus:
            obj = {
                name: getattr(doc, name)
                for name in _DOC_FIELDS
                if getattr(doc, name) is not None
            }
            fh.write(json.dumps(obj, ensure_ascii=False, separators=(",", ":")))
            fh.write("\n")


def read_corpus_jsonl(path) -> Corpus:
    documents = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path} line {lineno}: {exc}") from exc
            if not isinstance(obj, dict) or "id" not in obj or "text" not in obj:
                raise DataError(f"{path} line {lineno}: not a document object")
            documents.append(
                Document(
                    id=str(obj["id"]),
                    text=str(obj["text"]),
                    source=obj.get("source", "file"),
                    brand=obj.get("brand"),
                    product=obj.get("product"),
                    created_at=obj.get("created_at"),
                )
            )
    return build_corpus(documents)
