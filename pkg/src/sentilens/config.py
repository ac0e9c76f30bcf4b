"""Declarative pipeline configuration.

One TOML (or JSON) file describes sources, preprocessing, lexicons,
pruning, the train/test split and the output directory; command-line
flags override config fields, which override the built-in defaults.
Paths starting with ``pkg:`` resolve into the package's bundled data
(for example ``pkg:lexicon/positive.txt``).  The collector auth token is
only ever read from the SENTILENS_TOKEN environment variable.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from sentilens.collector import EndpointConfig
from sentilens.errors import ConfigError
from sentilens.evaluate import SplitSpec
from sentilens.preprocess import PreprocessOptions, load_stop_words

TOKEN_ENV_VAR = "SENTILENS_TOKEN"

DEFAULT_SEED = 13
DEFAULT_OUTPUT_DIR = "out"
DEFAULT_MAX_SPARSITY = 0.99

DEFAULT_FIELD_MAP = {"id": "id", "text": "text", "created_at": "created_at"}

DEFAULT_LEXICON_PATHS = {
    "generic_positive": "pkg:lexicon/positive.txt",
    "generic_negative": "pkg:lexicon/negative.txt",
    "slang_positive": "pkg:lexicon/slang_positive.txt",
    "slang_negative": "pkg:lexicon/slang_negative.txt",
}


def resolve_path(value: str, base_dir: Path | None = None) -> Path:
    """Resolve a config path: ``pkg:...`` points into bundled data,
    anything else is taken relative to the config file's directory.
    """
    if value.startswith("pkg:"):
        resource = resources.files("sentilens").joinpath("data", value[4:])
        return Path(str(resource))
    path = Path(value)
    if base_dir is not None and not path.is_absolute():
        path = base_dir / path
    return path


@dataclass(frozen=True)
class SourceConfig:
    """One input: either a local file or a paginated endpoint."""

    name: str
    path: Path | None = None
    format: str = "jsonl"
    endpoint: EndpointConfig | None = None
    brand: str | None = None
    product: str | None = None

    def __post_init__(self):
        if (self.path is None) == (self.endpoint is None):
            raise ConfigError(
                f"source {self.name!r} must set exactly one of path/base_url"
            )


@dataclass(frozen=True)
class PipelineConfig:
    sources: tuple[SourceConfig, ...] = ()
    preprocess: PreprocessOptions = field(default_factory=PreprocessOptions)
    lexicon_paths: dict[str, Path] = field(default_factory=dict)
    max_sparsity: float = DEFAULT_MAX_SPARSITY
    split: SplitSpec = field(default_factory=SplitSpec)
    output_dir: Path = Path(DEFAULT_OUTPUT_DIR)
    seed: int = DEFAULT_SEED
    field_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_FIELD_MAP))
    products: tuple[str, ...] = ()


def _require_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")


def _parse_source(entry: dict, index: int, base_dir: Path | None) -> SourceConfig:
    _require_keys(
        entry,
        {
            "name", "kind", "path", "format", "brand", "product",
            "base_url", "query", "page_size", "cursor_field",
            "records_field", "max_records", "rate_limit", "source_type",
        },
        f"sources[{index}]",
    )
    name = str(entry.get("name", f"source{index}"))
    brand = entry.get("brand")
    product = entry.get("product")
    if "path" in entry:
        return SourceConfig(
            name=name,
            path=resolve_path(str(entry["path"]), base_dir),
            format=str(entry.get("format", "jsonl")),
            brand=brand,
            product=product,
        )
    if "base_url" not in entry:
        raise ConfigError(f"source {name!r} needs either a path or a base_url")
    endpoint = EndpointConfig(
        base_url=str(entry["base_url"]),
        query=str(entry.get("query", "")),
        page_size=int(entry.get("page_size", 100)),
        cursor_field=str(entry.get("cursor_field", "next_cursor")),
        records_field=str(entry.get("records_field", "records")),
        max_records=int(entry.get("max_records", 1000)),
        auth_token=os.environ.get(TOKEN_ENV_VAR) or None,
        rate_limit=int(entry.get("rate_limit", 0)),
        source=str(entry.get("source_type", "twitter-like")),
    )
    return SourceConfig(name=name, endpoint=endpoint, brand=brand, product=product)


def _parse_preprocess(section: dict, base_dir: Path | None) -> PreprocessOptions:
    _require_keys(
        section,
        {"min_word_len", "stop_words", "stemmer", "remove_numbers", "lowercase"},
        "preprocess",
    )
    kwargs = {}
    if "min_word_len" in section:
        kwargs["min_word_len"] = int(section["min_word_len"])
    if "stemmer" in section:
        kwargs["stemmer"] = str(section["stemmer"])
    if "remove_numbers" in section:
        kwargs["remove_numbers"] = bool(section["remove_numbers"])
    if "lowercase" in section:
        kwargs["lowercase"] = bool(section["lowercase"])
    if "stop_words" in section:
        value = section["stop_words"]
        if isinstance(value, list):
            kwargs["stop_words"] = frozenset(str(w).lower() for w in value)
        else:
            kwargs["stop_words"] = load_stop_words(
                resolve_path(str(value), base_dir)
            )
    return PreprocessOptions(**kwargs)


def _parse_lexicon(section: dict, base_dir: Path | None) -> dict[str, Path]:
    allowed = {
        "generic_positive", "generic_negative",
        "domain_positive", "domain_negative",
        "slang_positive", "slang_negative",
    }
    _require_keys(section, allowed, "lexicon")
    merged = dict(DEFAULT_LEXICON_PATHS)
    merged.update({k: str(v) for k, v in section.items()})
    for pair in ("generic", "domain", "slang"):
        pos, neg = f"{pair}_positive" in merged, f"{pair}_negative" in merged
        if pos != neg:
            raise ConfigError(
                f"lexicon {pair} lists must be configured as a "
                f"positive/negative pair"
            )
    return {k: resolve_path(v, base_dir) for k, v in merged.items()}


def load_config(
    path: str | Path | None = None,
    *,
    output_dir: str | None = None,
    seed: int | None = None,
) -> PipelineConfig:
    """Read the config file (TOML by default, JSON by extension) and
    apply flag overrides.  With no file, everything is defaults.
    """
    raw: dict = {}
    base_dir: Path | None = None
    if path is not None:
        path = Path(path)
        if not path.is_file():
            raise ConfigError(f"config file {path} not found")
        base_dir = path.parent
        try:
            if path.suffix == ".json":
                raw = json.loads(path.read_text(encoding="utf-8"))
            else:
                with open(path, "rb") as fh:
                    raw = tomllib.load(fh)
        except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
            raise ConfigError(f"config file {path} failed to parse: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config file {path} must hold a table/object")
    _require_keys(
        raw,
        {
            "seed", "output_dir", "sources", "preprocess", "lexicon",
            "matrix", "split", "fields", "products",
        },
        "config",
    )

    cfg_seed = int(raw.get("seed", DEFAULT_SEED))
    if seed is not None:
        cfg_seed = seed

    cfg_out = raw.get("output_dir", DEFAULT_OUTPUT_DIR)
    if output_dir is not None:
        cfg_out = output_dir
    out_path = Path(cfg_out)
    if base_dir is not None and not out_path.is_absolute() and output_dir is None:
        out_path = base_dir / out_path

    sources = tuple(
        _parse_source(entry, i, base_dir)
        for i, entry in enumerate(raw.get("sources", []))
    )

    preprocess = _parse_preprocess(raw.get("preprocess", {}), base_dir)
    lexicon_paths = _parse_lexicon(raw.get("lexicon", {}), base_dir)

    matrix_section = raw.get("matrix", {})
    _require_keys(matrix_section, {"max_sparsity"}, "matrix")
    max_sparsity = float(matrix_section.get("max_sparsity", DEFAULT_MAX_SPARSITY))

    split_section = raw.get("split", {})
    _require_keys(split_section, {"train_fraction", "shuffle"}, "split")
    split = SplitSpec(
        train_fraction=float(split_section.get("train_fraction", 0.75)),
        seed=cfg_seed,
        shuffle=bool(split_section.get("shuffle", True)),
    )

    fields_section = raw.get("fields", {})
    _require_keys(fields_section, {"id", "text", "created_at"}, "fields")
    field_map = dict(DEFAULT_FIELD_MAP)
    field_map.update({k: str(v) for k, v in fields_section.items()})

    products_section = raw.get("products", {})
    _require_keys(products_section, {"names"}, "products")
    products = tuple(str(p) for p in products_section.get("names", []))

    return PipelineConfig(
        sources=sources,
        preprocess=preprocess,
        lexicon_paths=lexicon_paths,
        max_sparsity=max_sparsity,
        split=split,
        output_dir=out_path,
        seed=cfg_seed,
        field_map=field_map,
        products=products,
    )
