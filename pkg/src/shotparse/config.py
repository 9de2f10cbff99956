"""Run configuration: wordlist, exemptions, and date-format overrides.

The config file is JSON with these keys, all optional:

    wordlist            path to a one-token-per-line wordlist file
    wordlist_top_n      keep only the first N wordlist entries
    exempt_tokens       replace the built-in chrome exemption allowlist
    extra_exempt_tokens extend the allowlist instead of replacing it
    date_formats        names of built-in formats to enable (subset of
                        month_day_year, day_month_year, slash_mdy,
                        iso_ymd, relative)
    extra_date_patterns additional formats: {"name", "pattern", "relative"?}
                        where pattern is a regex with named groups
                        year/month/day (and optionally hour/minute/ampm)

Values from the config file override command-line flags; environment
variables are never consulted.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path

from .dates import BUILTIN_DATE_FORMATS, DateFormat
from .errors import SchemaViolation
from .wordlist import DEFAULT_EXEMPT_TOKENS, WordList, default_wordlist_path, load_wordlist

_KNOWN_KEYS = {
    "wordlist", "wordlist_top_n", "exempt_tokens", "extra_exempt_tokens",
    "date_formats", "extra_date_patterns",
}


@dataclass(frozen=True)
class ExtractionSettings:
    """Everything the extraction pipeline needs beyond the documents."""

    wordlist: WordList
    date_formats: tuple[DateFormat, ...]


def load_config_file(path: str | Path) -> dict:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaViolation(f"config is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise SchemaViolation("config must be a JSON object")
    unknown = data.keys() - _KNOWN_KEYS
    if unknown:
        raise SchemaViolation(f"unknown config keys: {sorted(unknown)}")
    return data


def resolve_settings(
    wordlist_path: str | None = None,
    top_n: int | None = None,
    config: dict | None = None,
) -> ExtractionSettings:
    """Merge flags and config into settings; the config file wins."""
    config = config or {}
    if "wordlist" in config:
        wordlist_path = config["wordlist"]
    if "wordlist_top_n" in config:
        top_n = config["wordlist_top_n"]

    exempt = set(DEFAULT_EXEMPT_TOKENS)
    if "exempt_tokens" in config:
        exempt = {str(t).lower() for t in config["exempt_tokens"]}
    if "extra_exempt_tokens" in config:
        exempt |= {str(t).lower() for t in config["extra_exempt_tokens"]}

    wl = load_wordlist(
        wordlist_path if wordlist_path else default_wordlist_path(),
        top_n=top_n,
        exempt=frozenset(exempt),
    )

    formats = list(BUILTIN_DATE_FORMATS)
    if "date_formats" in config:
        wanted = config["date_formats"]
        known = {f.name for f in BUILTIN_DATE_FORMATS}
        bad = set(wanted) - known
        if bad:
            raise SchemaViolation(f"unknown date formats: {sorted(bad)}", field="date_formats")
        formats = [f for f in BUILTIN_DATE_FORMATS if f.name in wanted]
    for extra in config.get("extra_date_patterns", []):
        try:
            pattern = re.compile(extra["pattern"], re.IGNORECASE)
        except (KeyError, re.error) as exc:
            raise SchemaViolation(
                f"bad extra date pattern: {exc}", field="extra_date_patterns"
            ) from exc
        if not extra.get("relative") and not {"year", "month", "day"} <= set(pattern.groupindex):
            raise SchemaViolation(
                "absolute patterns need year/month/day groups", field="extra_date_patterns"
            )
        formats.append(
            DateFormat(
                name=extra.get("name", "custom"),
                pattern=pattern,
                relative=bool(extra.get("relative", False)),
            )
        )
    return ExtractionSettings(wordlist=wl, date_formats=tuple(formats))
