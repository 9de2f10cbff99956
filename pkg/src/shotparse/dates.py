"""Timestamp candidates: find date-shaped text, then keep the meaningful ones.

A screenshot line can carry a date for two very different reasons: it is the
post's timestamp ("9:02 AM · Jun 3, 2024 · 1.2M Views"), or the date is just
part of what somebody wrote ("back in June 2020 we said this would happen").
Finding is a per-format pattern scan; deciding meaningful-vs-inessential is
a wordlist check on the rest of the line (see wordlist.line_has_common_word).
"""

from __future__ import annotations

import datetime as dt
import re
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import MentionOutOfRange
from .ocr import OcrDocument
from .wordlist import MONTHS, WordList, line_has_common_word

# Two-digit years resolve into 2000-2069, then 1970-1999.
TWO_DIGIT_YEAR_PIVOT = 70

_MONTH_NUM = {name: i + 1 for i, name in enumerate(MONTHS)}
_MONTH_NUM.update({name[:3]: i + 1 for i, name in enumerate(MONTHS)})

# Full names first so "June" is not cut short at "Jun".
_MONTH_ALT = "|".join(list(MONTHS) + [m[:3] for m in MONTHS])

_TIME_PART = r"(?:(?P<hour>1[0-2]|0?[1-9]):(?P<minute>[0-5]\d)\s*(?P<ampm>[AaPp])\.?[Mm]\.?\s*[·•\-.]\s*)?"


@dataclass(frozen=True)
class DateFormat:
    """One recognizable date shape.

    The pattern must use named groups from {year, month, day, hour, minute,
    ampm, num, unit}; ``relative`` marks duration-style stamps ("2h") that
    never normalize to a calendar date.
    """

    name: str
    pattern: re.Pattern
    relative: bool = False


def _fmt(name: str, pattern: str, relative: bool = False) -> DateFormat:
    return DateFormat(name, re.compile(pattern, re.IGNORECASE), relative)


# The platform's web and mobile renderings, plus frequent interchange forms.
# The separator class [·•\-.] covers OCR confusions of the middle dot.
BUILTIN_DATE_FORMATS: tuple[DateFormat, ...] = (
    _fmt(
        "month_day_year",
        _TIME_PART + r"\b(?P<month>" + _MONTH_ALT + r")\.?\s+(?P<day>[0-3]?\d),\s*(?P<year>\d{4})\b",
    ),
    _fmt(
        "day_month_year",
        r"\b(?P<day>[0-3]?\d)\s+(?P<month>" + _MONTH_ALT + r")\.?\s+(?P<year>\d{4})\b",
    ),
    _fmt(
        "slash_mdy",
        r"(?<![\d/])(?P<month>0?[1-9]|1[0-2])/(?P<day>[0-3]?\d)/(?P<year>\d{4}|\d{2})(?![\d/])",
    ),
    _fmt(
        "iso_ymd",
        r"(?<![-\d])(?P<year>\d{4})-(?P<month>0?[1-9]|1[0-2])-(?P<day>[0-3]?\d)(?![-\d])",
    ),
    # Case-sensitive: the platform renders relative stamps as "2h", "34m";
    # an uppercase M is a view-count suffix, not a unit.
    DateFormat(
        "relative",
        re.compile(r"(?<!\w)(?P<num>\d{1,2})(?P<unit>[smhdw])\b"),
        relative=True,
    ),
)


@dataclass(frozen=True)
class TimestampMention:
    """One date-shaped substring of a document line.

    ``date``/``time`` hold the normalized calendar value; both are None for
    relative stamps, which can never seed an archive query. ``meaningful``
    starts False and is only ever set by filter_meaningful_dates.
    """

    raw_text: str
    line_index: int
    char_offset: int
    date: dt.date | None
    time: dt.time | None = None
    relative: bool = False
    meaningful: bool = False

    @property
    def span(self) -> tuple[int, int]:
        return (self.char_offset, self.char_offset + len(self.raw_text))


def resolve_two_digit_year(value: int) -> int:
    if value < TWO_DIGIT_YEAR_PIVOT:
        return 2000 + value
    return 1900 + value


def _normalize_match(m: re.Match, fmt: DateFormat) -> tuple[dt.date, dt.time | None] | None:
    groups = m.groupdict()
    month_raw = groups["month"]
    if month_raw.isdigit():
        month = int(month_raw)
    else:
        month = _MONTH_NUM[month_raw.lower()[:3]]
    year = int(groups["year"])
    if len(groups["year"]) == 2:
        year = resolve_two_digit_year(year)
    try:
        date = dt.date(year, month, int(groups["day"]))
    except (ValueError, TypeError):
        return None
    time = None
    if groups.get("hour"):
        hour = int(groups["hour"]) % 12
        if groups["ampm"].lower() == "p":
            hour += 12
        time = dt.time(hour, int(groups["minute"]))
    return date, time


def find_timestamp_mentions(
    doc: OcrDocument,
    formats: Sequence[DateFormat] = BUILTIN_DATE_FORMATS,
) -> list[TimestampMention]:
    """All date-shaped substrings, ordered by (line_index, char_offset).

    Candidates that fail calendar validation (Feb 30) are dropped. When
    formats overlap on the same text, the earliest-starting then longest
    match wins and shadowed candidates are discarded.
    """
    mentions: list[TimestampMention] = []
    for line_index, line in enumerate(doc.lines):
        candidates = []
        for order, fmt in enumerate(formats):
            for m in fmt.pattern.finditer(line):
                candidates.append((m.start(), -(m.end() - m.start()), order, m, fmt))
        candidates.sort(key=lambda c: c[:3])
        taken: list[tuple[int, int]] = []
        for start, _, _, m, fmt in candidates:
            end = m.end()
            if any(start < t_end and end > t_start for t_start, t_end in taken):
                continue
            if fmt.relative:
                mention = TimestampMention(
                    raw_text=m.group(0), line_index=line_index, char_offset=start,
                    date=None, relative=True,
                )
            else:
                normalized = _normalize_match(m, fmt)
                if normalized is None:
                    continue
                date, time = normalized
                mention = TimestampMention(
                    raw_text=m.group(0), line_index=line_index, char_offset=start,
                    date=date, time=time,
                )
            taken.append((start, end))
            mentions.append(mention)
    mentions.sort(key=lambda t: (t.line_index, t.char_offset))
    return mentions


def filter_meaningful_dates(
    mentions: Sequence[TimestampMention],
    doc: OcrDocument,
    wl: WordList,
) -> list[TimestampMention]:
    """Set the meaningful flag on each mention; nothing else changes.

    A mention is meaningful when, with its own matched text blanked out and
    chrome tokens exempted, no remaining token on its line is a common word.
    Relative stamps are never meaningful. Output preserves input order.
    """
    result = []
    for mention in mentions:
        if not 0 <= mention.line_index < len(doc.lines):
            raise MentionOutOfRange(f"line {mention.line_index} not in document")
        if mention.relative or mention.date is None:
            result.append(replace(mention, meaningful=False))
            continue
        line = doc.lines[mention.line_index]
        meaningful = not line_has_common_word(line, [mention.span], wl)
        result.append(replace(mention, meaningful=meaningful))
    return result
