"""Collect raw JSON records from cursor-paginated HTTP endpoints or
local files.

The HTTP contract is deliberately narrow: GET with query parameters
``q``, ``count`` and ``cursor``, a JSON object body carrying a records
array and a next-page cursor, optional bearer-token auth, and the
``Retry-After`` header honored on 429.  Everything provider-specific
stays in EndpointConfig.  Payloads are re-serialized to compact
canonical JSON so repeated runs against unchanged data produce
byte-identical record sequences.
"""

from __future__ import annotations

import json
import logging
import time
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any

import requests

from sentilens.errors import ConfigError, DataError, NetworkError, RateLimitError

log = logging.getLogger(__name__)

SOURCES = ("twitter-like", "facebook-like", "file")

REQUEST_TIMEOUT = 10.0
MAX_ATTEMPTS = 3
BACKOFF_START = 0.5  # seconds, doubled per retry


@dataclass(frozen=True)
class EndpointConfig:
    base_url: str
    query: str
    page_size: int = 100
    cursor_field: str = "next_cursor"
    records_field: str = "records"
    max_records: int = 1000
    auth_token: str | None = None
    rate_limit: int = 0  # requests per minute; 0 = unlimited
    source: str = "twitter-like"

    def __post_init__(self):
        if not self.base_url:
            raise ConfigError("base_url must not be empty")
        if self.page_size < 1:
            raise ConfigError(f"page_size must be >= 1, got {self.page_size}")
        if self.max_records < 1:
            raise ConfigError(f"max_records must be >= 1, got {self.max_records}")
        if not self.cursor_field or not self.records_field:
            raise ConfigError("cursor_field and records_field must be non-empty")
        if self.rate_limit < 0:
            raise ConfigError(f"rate_limit must be >= 0, got {self.rate_limit}")
        if self.source not in SOURCES:
            raise ConfigError(
                f"source must be one of {SOURCES}, got {self.source!r}"
            )


@dataclass(frozen=True)
class RawRecord:
    source: str
    payload: str  # compact canonical JSON object text
    fetched_at: datetime = field(
        compare=False, default_factory=lambda: datetime.now(timezone.utc)
    )

    def parsed(self) -> dict[str, Any]:
        return json.loads(self.payload)


def _canonical(obj: dict[str, Any]) -> str:
    # compact, key order preserved: byte-stable across identical runs
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def _record(obj: Any, source: str) -> RawRecord:
    if not isinstance(obj, dict):
        raise DataError(f"record is not a JSON object: {obj!r}")
    return RawRecord(
        source=source,
        payload=_canonical(obj),
        fetched_at=datetime.now(timezone.utc),
    )


def _json_path(payload: Any, path: str) -> Any:
    """Walk a dotted path; returns None when any step is missing."""
    node = payload
    for key in path.split("."):
        if not isinstance(node, dict) or key not in node:
            return None
        node = node[key]
    return node


def fetch_page(
    config: EndpointConfig, cursor: str | None = None
) -> tuple[list[RawRecord], str | None]:
    """Fetch one page; returns its records and the next cursor (None
    when pagination is exhausted).
    """
    params: dict[str, Any] = {"q": config.query, "count": config.page_size}
    if cursor is not None:
        params["cursor"] = cursor
    headers = {}
    if config.auth_token:
        headers["Authorization"] = f"Bearer {config.auth_token}"
    try:
        response = requests.get(
            config.base_url,
            params=params,
            headers=headers,
            timeout=REQUEST_TIMEOUT,
        )
    except requests.RequestException as exc:
        raise NetworkError(f"request to {config.base_url} failed: {exc}") from exc
    if response.status_code == 429:
        retry_after = None
        header = response.headers.get("Retry-After")
        if header is not None:
            try:
                retry_after = float(header)
            except ValueError:
                retry_after = None
        raise RateLimitError(
            f"{config.base_url} rate-limited the request (429)",
            retry_after=retry_after,
        )
    if response.status_code >= 500:
        raise NetworkError(
            f"{config.base_url} returned {response.status_code}", retryable=True
        )
    if response.status_code >= 400:
        raise NetworkError(
            f"{config.base_url} returned {response.status_code}", retryable=False
        )
    try:
        body = json.loads(response.content)
    except json.JSONDecodeError as exc:
        raise DataError(
            f"malformed JSON from {config.base_url} at byte {exc.pos}: {exc.msg}"
        ) from exc
    raw_records = _json_path(body, config.records_field)
    if raw_records is None:
        raw_records = []
    if not isinstance(raw_records, list):
        raise DataError(
            f"field {config.records_field!r} in {config.base_url} "
            f"response is not an array"
        )
    records = [_record(obj, config.source) for obj in raw_records]
    next_cursor = _json_path(body, config.cursor_field)
    if next_cursor is not None and not isinstance(next_cursor, str):
        next_cursor = str(next_cursor)
    return records, next_cursor


def collect(
    config: EndpointConfig, *, sleep: Callable[[float], None] = time.sleep
) -> list[RawRecord]:
    """Follow the cursor chain until it ends or max_records is reached.

    Failed page fetches are retried up to MAX_ATTEMPTS times with
    exponential backoff; a 429 waits out its Retry-After first.
    Requests are spaced to respect config.rate_limit.  `sleep` exists
    for tests.
    """
    records: list[RawRecord] = []
    cursor: str | None = None
    spacing = 60.0 / config.rate_limit if config.rate_limit else 0.0
    last_request = None
    while True:
        if spacing and last_request is not None:
            elapsed = time.monotonic() - last_request
            if elapsed < spacing:
                sleep(spacing - elapsed)
        attempt = 0
        while True:
            attempt += 1
            last_request = time.monotonic()
            try:
                page, cursor = fetch_page(config, cursor)
                break
            except RateLimitError as exc:
                if attempt >= MAX_ATTEMPTS:
                    raise RateLimitError(
                        f"{exc} (gave up after {attempt} attempts)",
                        retry_after=exc.retry_after,
                        attempts=attempt,
                    ) from exc
                wait = exc.retry_after
                if wait is None:
                    wait = BACKOFF_START * 2 ** (attempt - 1)
                log.info("rate limited; waiting %.2fs (attempt %d)", wait, attempt)
                sleep(wait)
            except NetworkError as exc:
                if not exc.retryable or attempt >= MAX_ATTEMPTS:
                    raise NetworkError(
                        f"{exc} (gave up after {attempt} attempts)",
                        attempts=attempt,
                        retryable=exc.retryable,
                    ) from exc
                wait = BACKOFF_START * 2 ** (attempt - 1)
                log.info("retrying in %.2fs (attempt %d): %s", wait, attempt, exc)
                sleep(wait)
        records.extend(page)
        if len(records) >= config.max_records:
            del records[config.max_records:]
            break
        if cursor is None:
            break
    return records


@dataclass(frozen=True)
class IngestResult:
    """List-like bundle of ingested records plus the skipped-line count."""

    records: tuple[RawRecord, ...]
    skipped: int = 0

    def __iter__(self) -> Iterator[RawRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, index):
        return self.records[index]


def ingest_file(path, format: str = "jsonl", strict: bool = False) -> IngestResult:
    """Read records from a local JSONL or JSON-array file.

    Lenient mode (default) skips unparseable entries and counts them;
    strict mode raises on the first, naming the line.
    """
    if format not in ("jsonl", "json-array"):
        raise ConfigError(f"unknown ingest format {format!r}")
    records: list[RawRecord] = []
    skipped = 0
    if format == "jsonl":
        with open(path, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                    if not isinstance(obj, dict):
                        raise DataError("line is not a JSON object")
                    records.append(_record(obj, "file"))
                except (json.JSONDecodeError, DataError) as exc:
                    if strict:
                        raise DataError(
                            f"{path} line {lineno}: {exc}"
                        ) from exc
                    skipped += 1
    else:
        with open(path, encoding="utf-8") as fh:
            try:
                body = json.load(fh)
            except json.JSONDecodeError as exc:
                raise DataError(f"{path} is not valid JSON: {exc}") from exc
        if not isinstance(body, list):
            raise DataError(f"{path} does not hold a JSON array")
        for index, obj in enumerate(body):
            if not isinstance(obj, dict):
                if strict:
                    raise DataError(f"{path} element {index} is not an object")
                skipped += 1
                continue
            records.append(_record(obj, "file"))
    if skipped:
        log.info("ingest of %s skipped %d malformed entries", path, skipped)
    return IngestResult(records=tuple(records), skipped=skipped)


def write_records_jsonl(records, path) -> None:
    """One canonical payload per line, UTF-8, LF endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(record.payload)
            fh.write("\n")
