"""Search-query strings for locating a post's original.

Short prefixes query best: the most efficient text queries use only the
first 50 characters of a post, so every query carries at most that much
body text. Counting is in user-perceived characters — a composed emoji or
accented letter is never split. Queries are emitted, never executed;
general-web, fact-check, and web-archive targets get one each.
"""

from __future__ import annotations

import datetime as dt
import enum
from dataclasses import dataclass

from .errors import EmptyBody
from .grouping import PostUnit
from .ocr import OcrDocument
from .textnorm import grapheme_prefix

PREFIX_LIMIT = 50


class QueryTarget(enum.Enum):
    GENERAL_WEB = "GeneralWeb"
    FACT_CHECK = "FactCheck"
    WEB_ARCHIVE = "WebArchive"


@dataclass(frozen=True)
class QuerySpec:
    """One ready-to-issue search query."""

    text_prefix: str
    target: QueryTarget
    handle: str | None = None
    date: dt.date | None = None

    def __post_init__(self):
        if "\n" in self.text_prefix:
            raise ValueError("query prefix contains a line break")

    def as_tsv(self) -> str:
        """``target<TAB>handle<TAB>date<TAB>text_prefix`` with empty fields blank."""
        return "\t".join(
            (
                self.target.value,
                self.handle or "",
                self.date.isoformat() if self.date else "",
                self.text_prefix,
            )
        )


def build_queries(unit: PostUnit, doc: OcrDocument) -> list[QuerySpec]:
    """One QuerySpec per target for a post unit.

    The prefix is the first 50 user-perceived characters of the unit's body
    text (metadata lines already removed, whitespace collapsed); the handle
    and date come along when the unit has them.
    """
    if unit.span[1] >= len(doc.lines):
        raise ValueError("unit span exceeds document")
    body = unit.body_text
    if not body:
        raise EmptyBody(f"unit spanning lines {unit.span} has no body text")
    prefix = grapheme_prefix(body, PREFIX_LIMIT)
    handle = unit.author.handle if unit.author else None
    date = unit.timestamp.date if unit.timestamp else None
    return [
        QuerySpec(text_prefix=prefix, target=target, handle=handle, date=date)
        for target in QueryTarget
    ]
