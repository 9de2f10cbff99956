"""Data plumbing: URL lists, URL reconstruction, record files, tallies.

Annotations, capture manifests, and parse results are line-delimited JSON
(one object per line) with an explicit schema_version — streamable,
diff-friendly, and append-safe for long scrapes. URL lists are plain text,
one URL per line, ``#`` comments allowed.
"""

from __future__ import annotations

import datetime as dt
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence
from urllib.parse import urlparse

from .errors import MalformedUrl, MissingAccount, SchemaViolation, UnsupportedPlatform
from .evaluation import Annotation, AnnotationUnit
from .grouping import ParseFlag, ScreenshotParse
from .structure import InternalStructure, PostTypeLabel
import enum

RECORD_SCHEMA_VERSION = 1


class Platform(enum.Enum):
    FACEBOOK = "Facebook"
    INSTAGRAM = "Instagram"
    TRUTH_SOCIAL = "TruthSocial"
    TWITTER = "Twitter"


class CaptureMode(enum.Enum):
    WEB_LIGHT = "WebLight"
    WEB_DARK = "WebDark"
    MOBILE_LIGHT = "MobileLight"
    MOBILE_DARK = "MobileDark"


class CaptureStatus(enum.Enum):
    OK = "Ok"
    BROKEN_URL = "BrokenUrl"
    SKIPPED = "Skipped"


MODE_CODES = {
    CaptureMode.MOBILE_DARK: "MD",
    CaptureMode.MOBILE_LIGHT: "ML",
    CaptureMode.WEB_DARK: "WD",
    CaptureMode.WEB_LIGHT: "WL",
}
PLATFORM_CODES = {
    Platform.FACEBOOK: "FB",
    Platform.INSTAGRAM: "IG",
    Platform.TRUTH_SOCIAL: "TS",
    Platform.TWITTER: "T",
}
# Row and column order of the capture-count table.
TALLY_MODE_ORDER = (
    CaptureMode.MOBILE_DARK, CaptureMode.MOBILE_LIGHT,
    CaptureMode.WEB_DARK, CaptureMode.WEB_LIGHT,
)
TALLY_PLATFORM_ORDER = (
    Platform.FACEBOOK, Platform.INSTAGRAM, Platform.TRUTH_SOCIAL, Platform.TWITTER,
)

# x.com and twitter.com are the same platform; canonical output prefers
# twitter.com.
_PLATFORM_HOSTS = {
    Platform.TWITTER: {"twitter.com", "x.com", "mobile.twitter.com"},
    Platform.FACEBOOK: {"facebook.com", "m.facebook.com"},
    Platform.INSTAGRAM: {"instagram.com"},
    Platform.TRUTH_SOCIAL: {"truthsocial.com"},
}

# The platforms' public permalink shapes; only Instagram's is documented by
# the upstream datasets, the rest are overridable here.
URL_TEMPLATES = {
    Platform.INSTAGRAM: "https://www.instagram.com/p/{post_id}/",
    Platform.TWITTER: "https://twitter.com/{account}/status/{post_id}",
    Platform.FACEBOOK: "https://www.facebook.com/{account}/posts/{post_id}",
    Platform.TRUTH_SOCIAL: "https://truthsocial.com/@{account}/posts/{post_id}",
}


@dataclass(frozen=True)
class PostUrl:
    platform: Platform
    url: str
    post_id: str | None = None
    account: str | None = None


@dataclass(frozen=True)
class CaptureManifestEntry:
    """One capture attempt; image_path is present exactly when status is Ok."""

    screenshot_id: str
    post_url: PostUrl
    mode: CaptureMode
    image_path: str | None
    captured_at: str
    status: CaptureStatus

    def __post_init__(self):
        if (self.image_path is not None) != (self.status is CaptureStatus.OK):
            raise ValueError("image_path present iff status is Ok")


def _host_platform(host: str) -> Platform | None:
    host = host.lower()
    if host.startswith("www."):
        host = host[4:]
    for platform, hosts in _PLATFORM_HOSTS.items():
        if host in hosts:
            return platform
    return None


def _extract_ids(platform: Platform, path: str) -> tuple[str | None, str | None]:
    """(post_id, account) from a permalink path, when the shape is known."""
    parts = [p for p in path.split("/") if p]
    if platform is Platform.TWITTER and len(parts) >= 3 and parts[1] == "status":
        return parts[2], parts[0]
    if platform is Platform.INSTAGRAM and len(parts) >= 2 and parts[0] == "p":
        return parts[1], None
    if platform is Platform.FACEBOOK and len(parts) >= 3 and parts[1] == "posts":
        return parts[2], parts[0]
    if (
        platform is Platform.TRUTH_SOCIAL
        and len(parts) >= 3
        and parts[0].startswith("@")
        and parts[1] == "posts"
    ):
        return parts[2], parts[0][1:]
    return None, None


def parse_post_url(url: str, platform: Platform, line_number: int = 0) -> PostUrl:
    parsed = urlparse(url.strip())
    if parsed.scheme not in ("http", "https") or not parsed.netloc:
        raise MalformedUrl(f"not an http(s) URL: {url!r}", line_number)
    found = _host_platform(parsed.netloc)
    if found is not platform:
        raise MalformedUrl(
            f"host {parsed.netloc!r} does not belong to {platform.value}", line_number
        )
    post_id, account = _extract_ids(platform, parsed.path)
    return PostUrl(platform=platform, url=url.strip(), post_id=post_id, account=account)


def load_url_list(path: str | Path, platform: Platform) -> list[PostUrl]:
    """One URL per line; blank lines and ``#`` comments skipped."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(str(path))
    urls = []
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        urls.append(parse_post_url(stripped, platform, line_number))
    return urls


def build_url(
    platform: Platform,
    post_id: str,
    account: str | None = None,
    templates: dict[Platform, str] | None = None,
) -> PostUrl:
    """Reconstruct a permalink from a bare post ID (plus account when the
    platform's path needs one)."""
    if not post_id:
        raise ValueError("post_id is empty")
    templates = templates if templates is not None else URL_TEMPLATES
    if platform not in templates:
        raise UnsupportedPlatform(platform.value)
    template = templates[platform]
    if "{account}" in template and not account:
        raise MissingAccount(f"{platform.value} URLs need an account name")
    url = template.format(post_id=post_id, account=account or "")
    return PostUrl(platform=platform, url=url, post_id=post_id, account=account)


def _read_jsonl(path: Path) -> Iterable[tuple[int, dict]]:
    for line_number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SchemaViolation(f"invalid JSON: {exc}", line_number) from exc
        if not isinstance(data, dict):
            raise SchemaViolation("record is not an object", line_number)
        yield line_number, data


def _require(data: dict, field: str, line_number: int):
    if field not in data:
        raise SchemaViolation("missing", line_number, field)
    return data[field]


def _parse_date(value, line_number: int, field: str) -> dt.date | None:
    if value is None:
        return None
    try:
        return dt.date.fromisoformat(value)
    except (TypeError, ValueError) as exc:
        raise SchemaViolation(f"bad date {value!r}", line_number, field) from exc


def load_annotations(path: str | Path) -> list[Annotation]:
    path = Path(path)
    annotations = []
    for line_number, data in _read_jsonl(path):
        _require(data, "schema_version", line_number)
        screenshot_id = _require(data, "screenshot_id", line_number)
        structure_raw = _require(data, "true_structure", line_number)
        try:
            structure = InternalStructure(structure_raw)
        except ValueError as exc:
            raise SchemaViolation(
                f"unknown structure {structure_raw!r}", line_number, "true_structure"
            ) from exc
        units_raw = _require(data, "units", line_number)
        if not isinstance(units_raw, list) or not units_raw:
            raise SchemaViolation("units must be a nonempty list", line_number, "units")
        units = []
        for u in units_raw:
            author = u.get("author")
            if not author or not isinstance(author, str):
                raise SchemaViolation("unit author missing", line_number, "units.author")
            if "body" not in u or not isinstance(u["body"], str):
                raise SchemaViolation("unit body missing", line_number, "units.body")
            units.append(
                AnnotationUnit(
                    author=author,
                    date=_parse_date(u.get("date"), line_number, "units.date"),
                    body=u["body"],
                )
            )
        try:
            annotations.append(
                Annotation(
                    screenshot_id=screenshot_id,
                    true_structure=structure,
                    units=tuple(units),
                )
            )
        except ValueError as exc:
            raise SchemaViolation(str(exc), line_number, "true_structure") from exc
    return annotations


def save_annotations(annotations: Sequence[Annotation], path: str | Path) -> None:
    lines = []
    for ann in annotations:
        lines.append(
            json.dumps(
                {
                    "schema_version": RECORD_SCHEMA_VERSION,
                    "screenshot_id": ann.screenshot_id,
                    "true_structure": ann.true_structure.value,
                    "units": [
                        {
                            "author": u.author,
                            "date": u.date.isoformat() if u.date else None,
                            "body": u.body,
                        }
                        for u in ann.units
                    ],
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def load_manifest(path: str | Path) -> list[CaptureManifestEntry]:
    path = Path(path)
    entries = []
    for line_number, data in _read_jsonl(path):
        _require(data, "schema_version", line_number)
        screenshot_id = _require(data, "screenshot_id", line_number)
        try:
            platform = Platform(_require(data, "platform", line_number))
            mode = CaptureMode(_require(data, "mode", line_number))
            status = CaptureStatus(_require(data, "status", line_number))
        except ValueError as exc:
            raise SchemaViolation(str(exc), line_number) from exc
        url = _require(data, "url", line_number)
        image_path = data.get("image_path")
        try:
            post_url = parse_post_url(url, platform, line_number)
        except MalformedUrl:
            # Manifests may record URLs that failed precisely because they
            # were odd; keep them verbatim without extracted ids.
            post_url = PostUrl(platform=platform, url=url)
        try:
            entries.append(
                CaptureManifestEntry(
                    screenshot_id=screenshot_id,
                    post_url=post_url,
                    mode=mode,
                    image_path=image_path,
                    captured_at=str(_require(data, "captured_at", line_number)),
                    status=status,
                )
            )
        except ValueError as exc:
            raise SchemaViolation(str(exc), line_number, "image_path") from exc
    return entries


def save_manifest(entries: Sequence[CaptureManifestEntry], path: str | Path) -> None:
    lines = []
    for e in entries:
        record = {
            "schema_version": RECORD_SCHEMA_VERSION,
            "screenshot_id": e.screenshot_id,
            "platform": e.post_url.platform.value,
            "mode": e.mode.value,
            "url": e.post_url.url,
            "captured_at": e.captured_at,
            "status": e.status.value,
        }
        if e.image_path is not None:
            record["image_path"] = e.image_path
        lines.append(json.dumps(record, ensure_ascii=False, sort_keys=True))
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def tally_manifest(
    entries: Sequence[CaptureManifestEntry],
) -> dict[tuple[CaptureMode, Platform], int]:
    """Count Ok captures by (mode, platform)."""
    counts: dict[tuple[CaptureMode, Platform], int] = {}
    for mode in TALLY_MODE_ORDER:
        for platform in TALLY_PLATFORM_ORDER:
            counts[(mode, platform)] = 0
    for e in entries:
        if e.status is CaptureStatus.OK:
            counts[(e.mode, e.post_url.platform)] += 1
    return counts


def format_tally(counts: dict[tuple[CaptureMode, Platform], int]) -> str:
    """Capture-count table: MD/ML/WD/WL rows, platform columns and totals."""
    header = f"{'':>4}" + "".join(
        f"{PLATFORM_CODES[p]:>8}" for p in TALLY_PLATFORM_ORDER
    )
    lines = [header]
    for mode in TALLY_MODE_ORDER:
        row = f"{MODE_CODES[mode]:>4}" + "".join(
            f"{counts.get((mode, p), 0):>8}" for p in TALLY_PLATFORM_ORDER
        )
        lines.append(row)
    totals = {
        p: sum(counts.get((m, p), 0) for m in TALLY_MODE_ORDER)
        for p in TALLY_PLATFORM_ORDER
    }
    lines.append(
        f"{'Tot':>4}" + "".join(f"{totals[p]:>8}" for p in TALLY_PLATFORM_ORDER)
    )
    return "\n".join(lines)


def parse_record(
    parse: ScreenshotParse,
    structure: InternalStructure,
    post_types: frozenset[PostTypeLabel],
) -> dict:
    """Serializable record for one screenshot's pipeline result."""
    return {
        "schema_version": RECORD_SCHEMA_VERSION,
        "screenshot_id": parse.screenshot_id,
        "structure": structure.value,
        "post_types": sorted(t.value for t in post_types),
        "date_count": parse.date_count,
        "author_count_distinct": parse.author_count_distinct,
        "flags": sorted(f.value for f in parse.flags),
        "units": [
            {
                "author": unit.author.handle if unit.author else None,
                "date": unit.timestamp.date.isoformat()
                if unit.timestamp and unit.timestamp.date
                else None,
                "time": unit.timestamp.time.isoformat(timespec="minutes")
                if unit.timestamp and unit.timestamp.time
                else None,
                "body": unit.body_text,
                "span": list(unit.span),
            }
            for unit in parse.units
        ],
    }


def load_parse_records(path: str | Path) -> list[dict]:
    """Validated parse records as dicts, in file order."""
    records = []
    for line_number, data in _read_jsonl(Path(path)):
        for field in ("schema_version", "screenshot_id", "structure", "units"):
            _require(data, field, line_number)
        try:
            InternalStructure(data["structure"])
        except ValueError as exc:
            raise SchemaViolation(
                f"unknown structure {data['structure']!r}", line_number, "structure"
            ) from exc
        for flag in data.get("flags", []):
            try:
                ParseFlag(flag)
            except ValueError as exc:
                raise SchemaViolation(f"unknown flag {flag!r}", line_number, "flags") from exc
        records.append(data)
    return records
