"""Partition a document into per-post units at author-line boundaries.

A unit begins at its author's line; the first unit also absorbs everything
above the first author (a post owns its leading context), and the last unit
runs to the end of the document, so unit spans always partition the lines.
Each meaningful date then lands in the unit whose span contains it.

Post count (meaningful dates) and author structure can disagree — a cropped
composite often loses its metadata — so degenerate inputs produce
diagnostic flags, never failures.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .dates import TimestampMention
from .handles import HandleMention
from .ocr import OcrDocument
from .textnorm import collapse_whitespace


class ParseFlag(enum.Enum):
    COUNTS_MISMATCH = "CountsMismatch"
    NO_AUTHORS = "NoAuthors"
    NO_DATES = "NoDates"
    EMPTY_DOCUMENT = "EmptyDocument"


@dataclass(frozen=True)
class PostUnit:
    """One post inside a screenshot.

    ``body_lines`` lists every line of the span (metadata lines are marked
    by ``author``/``timestamp``, not removed); ``body_text`` is the span's
    text with the author, timestamp, and display-name lines taken out,
    joined with single spaces.
    """

    author: HandleMention | None
    timestamp: TimestampMention | None
    span: tuple[int, int]
    body_lines: tuple[int, ...]
    body_text: str


@dataclass(frozen=True)
class ScreenshotParse:
    """Full grouping result for one screenshot."""

    screenshot_id: str
    units: tuple[PostUnit, ...]
    date_count: int
    author_count_distinct: int
    flags: frozenset[ParseFlag]


def display_name_lines(
    doc: OcrDocument,
    boundaries: Sequence[HandleMention],
    dates: Sequence[TimestampMention] = (),
) -> frozenset[int]:
    """Lines holding only a display name directly above a handle-only
    author line — the platform's web header — treated as chrome, not body."""
    handle_only = {
        b.line_index: b
        for b in boundaries
        if doc.lines[b.line_index].strip() == "@" + b.handle
    }
    date_lines = {d.line_index for d in dates}
    found = set()
    for line_index in handle_only:
        prev = line_index - 1
        if prev < 0:
            continue
        line = doc.lines[prev]
        if not line.strip():
            continue
        if "@" in line or prev in handle_only or prev in date_lines:
            continue
        found.add(prev)
    return frozenset(found)


def _body_text(doc: OcrDocument, span: tuple[int, int], excluded: set[int]) -> str:
    parts = []
    for i in range(span[0], span[1] + 1):
        if i in excluded:
            continue
        parts.append(doc.lines[i])
    return collapse_whitespace(" ".join(parts))


def group_posts(
    doc: OcrDocument,
    handles: Sequence[HandleMention],
    dates: Sequence[TimestampMention],
) -> ScreenshotParse:
    """Group a document into posts using author locations as boundaries.

    Unit i spans from author i's line to the line before author i+1's line;
    the first unit also takes all leading lines and the last runs to the
    document end. A unit's timestamp is the first meaningful date inside
    its span. When a line carries several author handles, the first is the
    boundary and the rest stay plain mentions.

    Flags report the degenerate shapes: no authors (single unbounded unit),
    no meaningful dates, a date/author count disagreement, and the empty
    document.
    """
    handles = sorted(handles, key=lambda h: (h.line_index, h.char_offset))
    dates = sorted(dates, key=lambda d: (d.line_index, d.char_offset))

    meaningful = [d for d in dates if d.meaningful]
    authors = [h for h in handles if h.is_author]
    boundaries: list[HandleMention] = []
    for mention in authors:
        if not boundaries or mention.line_index > boundaries[-1].line_index:
            boundaries.append(mention)

    date_count = len(meaningful)
    author_count_distinct = len({a.key() for a in authors})

    flags = set()
    if doc.is_empty:
        flags.add(ParseFlag.EMPTY_DOCUMENT)
    if not boundaries:
        flags.add(ParseFlag.NO_AUTHORS)
    if date_count == 0:
        flags.add(ParseFlag.NO_DATES)
    if date_count != len(boundaries):
        flags.add(ParseFlag.COUNTS_MISMATCH)

    if doc.is_empty:
        return ScreenshotParse(
            screenshot_id=doc.screenshot_id, units=(),
            date_count=date_count, author_count_distinct=author_count_distinct,
            flags=frozenset(flags),
        )

    last_line = len(doc.lines) - 1
    if boundaries:
        spans = []
        for i, boundary in enumerate(boundaries):
            first = 0 if i == 0 else boundary.line_index
            last = boundaries[i + 1].line_index - 1 if i + 1 < len(boundaries) else last_line
            spans.append((first, last))
        unit_authors: list[HandleMention | None] = list(boundaries)
    else:
        spans = [(0, last_line)]
        unit_authors = [None]

    name_lines = display_name_lines(doc, boundaries, dates)

    assigned: list[TimestampMention | None] = [None] * len(spans)
    for mention in meaningful:
        for i, (first, last) in enumerate(spans):
            if first <= mention.line_index <= last:
                if assigned[i] is None:
                    assigned[i] = mention
                break

    units = []
    for i, (first, last) in enumerate(spans):
        excluded = set(name_lines)
        author = unit_authors[i]
        if author is not None:
            excluded.add(author.line_index)
        timestamp = assigned[i]
        if timestamp is not None:
            excluded.add(timestamp.line_index)
        units.append(
            PostUnit(
                author=author,
                timestamp=timestamp,
                span=(first, last),
                body_lines=tuple(range(first, last + 1)),
                body_text=_body_text(doc, (first, last), excluded),
            )
        )

    return ScreenshotParse(
        screenshot_id=doc.screenshot_id,
        units=tuple(units),
        date_count=date_count,
        author_count_distinct=author_count_distinct,
        flags=frozenset(flags),
    )
