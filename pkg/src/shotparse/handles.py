"""Handle candidates: find @-mentions, then decide which one is the author.

The platform's username rule applies: an address sign followed by 4-15
characters drawn from letters, digits, and underscore. Matching is greedy
with no backtracking, so a 16-character run is rejected outright instead of
being truncated to 15 — a truncated handle would query the wrong account.

The author-vs-mention split mirrors the date filter: a handle embedded in a
line of ordinary common words ("thanks @user9999 for the support") is
somebody being talked about, not the author; the author's header line
carries only the display name, chrome, and the handle itself.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Sequence

from .errors import MentionOutOfRange
from .ocr import OcrDocument
from .wordlist import WordList, line_has_common_word

HANDLE_MIN = 4
HANDLE_MAX = 15

# Full maximal run after '@'; the 4-15 window is enforced on the run length.
_HANDLE_RUN = re.compile(r"(?:(?<=\s)|^)@([A-Za-z0-9_]+)")


@dataclass(frozen=True)
class HandleMention:
    """One @handle occurrence; ``handle`` excludes the address sign,
    display case preserved. ``char_offset`` points at the '@'."""

    handle: str
    line_index: int
    char_offset: int
    is_author: bool = False

    @property
    def span(self) -> tuple[int, int]:
        return (self.char_offset, self.char_offset + 1 + len(self.handle))

    def key(self) -> str:
        """Case-insensitive identity; platform usernames ignore case."""
        return self.handle.lower()


def find_handle_mentions(doc: OcrDocument) -> list[HandleMention]:
    """All well-formed @handles, ordered by (line_index, char_offset).

    An '@' must follow start-of-line or whitespace. Runs of 1-3 or more
    than 15 handle characters yield nothing.
    """
    mentions = []
    for line_index, line in enumerate(doc.lines):
        for m in _HANDLE_RUN.finditer(line):
            run = m.group(1)
            if HANDLE_MIN <= len(run) <= HANDLE_MAX:
                mentions.append(
                    HandleMention(handle=run, line_index=line_index, char_offset=m.start())
                )
    return mentions


def filter_author_handles(
    mentions: Sequence[HandleMention],
    doc: OcrDocument,
    wl: WordList,
) -> list[HandleMention]:
    """Set is_author on each mention; order and membership unchanged.

    A mention is an author candidate when, with the handle text blanked out
    and chrome tokens exempted, no remaining token on its line is a common
    word.
    """
    result = []
    for mention in mentions:
        if not 0 <= mention.line_index < len(doc.lines):
            raise MentionOutOfRange(f"line {mention.line_index} not in document")
        line = doc.lines[mention.line_index]
        is_author = not line_has_common_word(line, [mention.span], wl)
        result.append(replace(mention, is_author=is_author))
    return result
