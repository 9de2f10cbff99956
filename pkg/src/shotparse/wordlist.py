"""Common-word list used to tell post metadata apart from body text.

A line that holds a real timestamp or the post author is platform chrome:
it carries the date, the handle, view counts, and little else. Body text is
ordinary language. So a candidate metadata line is disqualified as soon as
any ordinary common word appears on it, where "common" means membership in
a frequency wordlist (one lowercase token per line, most frequent first,
in the layout of the google-10000-english file).

Platform chrome words ("Views", month names, "AM") would wrongly disqualify
almost every legitimate timestamp line, so a configurable exemption
allowlist is removed from the wordlist at load time and skipped during
line checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import EmptyWordlist
from .textnorm import tokenize

MONTHS = (
    "january", "february", "march", "april", "may", "june",
    "july", "august", "september", "october", "november", "december",
)
MONTH_ABBREVS = tuple(m[:3] for m in MONTHS)
WEEKDAYS = (
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday",
)
WEEKDAY_ABBREVS = tuple(d[:3] for d in WEEKDAYS)

# Platform chrome tokens that legitimately share a line with post metadata.
CHROME_TOKENS = (
    "am", "pm",
    "views", "view",
    "likes", "like",
    "reposts", "repost",
    "retweets", "retweet",
    "quote", "quotes",
    "replies", "reply",
    "bookmarks",
)

DEFAULT_EXEMPT_TOKENS = frozenset(
    MONTHS + MONTH_ABBREVS + WEEKDAYS + WEEKDAY_ABBREVS + CHROME_TOKENS
)


@dataclass(frozen=True)
class WordList:
    """Immutable set of common words, shareable across parallel workers."""

    words: frozenset[str]
    source_path: str
    exempt: frozenset[str] = DEFAULT_EXEMPT_TOKENS

    @property
    def size(self) -> int:
        return len(self.words)

    def __contains__(self, token: str) -> bool:
        return token in self.words


def load_wordlist(
    path: str | Path,
    top_n: int | None = None,
    exempt: frozenset[str] = DEFAULT_EXEMPT_TOKENS,
) -> WordList:
    """Load a one-token-per-line wordlist, exemptions removed.

    ``top_n`` keeps only the first N lines, mirroring how a frequency list
    can be truncated to its most common entries.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(str(path))
    lines = path.read_text(encoding="utf-8").splitlines()
    if top_n is not None:
        lines = lines[:top_n]
    words = set()
    for line in lines:
        token = line.strip().lower()
        if token and not any(ch.isspace() for ch in token):
            words.add(token)
    words -= set(exempt)
    if not words:
        raise EmptyWordlist(str(path))
    return WordList(words=frozenset(words), source_path=str(path), exempt=frozenset(exempt))


def default_wordlist_path() -> Path:
    """Bundled common-word list (stand-in layout for google-10000-english)."""
    return Path(resources.files("shotparse").joinpath("data/common_words.txt"))


def default_wordlist() -> WordList:
    return load_wordlist(default_wordlist_path())


def line_has_common_word(
    line: str,
    remove_spans: list[tuple[int, int]],
    wl: WordList,
) -> bool:
    """True if the line still carries a common word once the matched
    metadata text (``remove_spans``, as (start, end) offsets) and exempt
    chrome tokens are taken out."""
    if remove_spans:
        chars = list(line)
        for start, end in remove_spans:
            for i in range(start, min(end, len(chars))):
                chars[i] = " "
        line = "".join(chars)
    for token in tokenize(line):
        if token in wl.exempt:
            continue
        if token in wl:
            return True
    return False
