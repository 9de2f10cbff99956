"""End-to-end composition: mentions -> filters -> grouping."""

from __future__ import annotations

from typing import Sequence

from .dates import BUILTIN_DATE_FORMATS, DateFormat, filter_meaningful_dates, find_timestamp_mentions
from .grouping import ScreenshotParse, group_posts
from .handles import filter_author_handles, find_handle_mentions
from .ocr import OcrDocument
from .wordlist import WordList


def parse_screenshot(
    doc: OcrDocument,
    wl: WordList,
    date_formats: Sequence[DateFormat] = BUILTIN_DATE_FORMATS,
) -> ScreenshotParse:
    """Run the whole extraction pipeline on one document."""
    dates = find_timestamp_mentions(doc, date_formats)
    dates = filter_meaningful_dates(dates, doc, wl)
    handles = find_handle_mentions(doc)
    handles = filter_author_handles(handles, doc, wl)
    return group_posts(doc, handles, dates)
