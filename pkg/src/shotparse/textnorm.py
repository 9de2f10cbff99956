"""Text normalization helpers: newlines, tokens, body text, grapheme clusters."""

from __future__ import annotations

import unicodedata

_ZWJ = "‍"
_ZWNJ = "‌"


def normalize_newlines(text: str) -> str:
    """Rewrite CR-LF and bare CR line endings to LF."""
    return text.replace("\r\n", "\n").replace("\r", "\n")


def split_lines(text: str) -> list[str]:
    """Split normalized text into lines, dropping trailing empty lines only.

    Interior empty lines are kept; they carry vertical-layout information.
    """
    lines = normalize_newlines(text).split("\n")
    while lines and lines[-1] == "":
        lines.pop()
    return lines


def collapse_whitespace(text: str) -> str:
    return " ".join(text.split())


def tokenize(text: str) -> list[str]:
    """Split on whitespace, strip non-alphanumeric edges, lowercase.

    Empty leftovers (pure punctuation like a middle dot) are dropped.
    Interior punctuation is kept, so "1.2M" and "don't" survive intact.
    """
    tokens = []
    for raw in text.split():
        start = 0
        end = len(raw)
        while start < end and not raw[start].isalnum():
            start += 1
        while end > start and not raw[end - 1].isalnum():
            end -= 1
        if start < end:
            tokens.append(raw[start:end].lower())
    return tokens


def normalize_body(text: str) -> str:
    """Canonical body form for comparisons: lowercase, no punctuation, single spaces."""
    kept = []
    for ch in text.lower():
        if ch.isalnum() or ch.isspace():
            kept.append(ch)
        else:
            kept.append(" ")
    return collapse_whitespace("".join(kept))


def _is_regional_indicator(ch: str) -> bool:
    return 0x1F1E6 <= ord(ch) <= 0x1F1FF


def _extends_cluster(ch: str) -> bool:
    # Combining marks, variation selectors, skin-tone modifiers, ZWNJ.
    if unicodedata.combining(ch):
        return True
    cat = unicodedata.category(ch)
    if cat in ("Mn", "Mc", "Me"):
        return True
    cp = ord(ch)
    if 0xFE00 <= cp <= 0xFE0F or 0x1F3FB <= cp <= 0x1F3FF:
        return True
    return ch == _ZWNJ


def grapheme_clusters(text: str) -> list[str]:
    """Segment text into user-perceived characters.

    Covers the cases that matter for post text: combining marks, emoji
    modifier/ZWJ sequences, and regional-indicator flag pairs. Not a full
    UAX #29 implementation (no Hangul conjoining, no prepend class).
    """
    clusters: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        j = i + 1
        if _is_regional_indicator(text[i]) and j < n and _is_regional_indicator(text[j]):
            j += 1
        while j < n:
            if _extends_cluster(text[j]):
                j += 1
            elif text[j] == _ZWJ and j + 1 < n:
                j += 2
            else:
                break
        clusters.append(text[i:j])
        i = j
    return clusters


def grapheme_prefix(text: str, max_clusters: int) -> str:
    """First ``max_clusters`` user-perceived characters of ``text``."""
    clusters = grapheme_clusters(text)
    return "".join(clusters[:max_clusters])
