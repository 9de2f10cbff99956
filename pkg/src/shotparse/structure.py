"""Internal-structure categories: post count x author count.

The category grid is the Nwala-style acronym system: single or multiple
posts crossed with single or multiple authors. Post count comes from
meaningful dates; author count from distinct author handles. A screenshot
that yields neither is Indeterminate — the signature of a cropped composite
pasted together outside the platform, which never occurs there naturally
and usually lacks the metadata lines entirely.
"""

from __future__ import annotations

import enum

from .grouping import ParseFlag, ScreenshotParse


class InternalStructure(enum.Enum):
    P1A1 = "P1A1"
    P1AN = "P1An"
    PNA1 = "PnA1"
    PNAN = "PnAn"
    INDETERMINATE = "Indeterminate"


class PostTypeLabel(enum.Enum):
    STATUS = "Status"
    REPLY = "Reply"
    COTWEET = "CoTweet"
    CROPPED_SNAPSHOT = "CroppedSnapshot"


# Canonical category order for matrices, reports, and serialized output.
CANONICAL_ORDER = (
    InternalStructure.P1A1,
    InternalStructure.P1AN,
    InternalStructure.PNA1,
    InternalStructure.PNAN,
    InternalStructure.INDETERMINATE,
)


def classify_structure(parse: ScreenshotParse) -> InternalStructure:
    """Map (post count, author count) to the structure category.

    Post count is the meaningful-date count; when OCR lost every timestamp
    line but authors exist (flagged NoDates on the parse), the unit count
    stands in, since author structure still carries signal.
    """
    posts = parse.date_count
    if posts == 0 and parse.author_count_distinct > 0:
        posts = len(parse.units)
    authors = parse.author_count_distinct
    if ParseFlag.EMPTY_DOCUMENT in parse.flags or posts == 0 or authors == 0:
        return InternalStructure.INDETERMINATE
    if posts == 1:
        return InternalStructure.P1A1 if authors == 1 else InternalStructure.P1AN
    return InternalStructure.PNA1 if authors == 1 else InternalStructure.PNAN


def suggest_post_types(structure: InternalStructure) -> frozenset[PostTypeLabel]:
    """Post-type labels compatible with a structure category.

    A status lives as single-post/single-author; replies and co-tweets as
    multi-post shapes. Indeterminate suggests a cropped snapshot: multiple
    posts pasted together never occur naturally on the platform and
    typically carry no usable metadata.
    """
    if structure is InternalStructure.P1A1:
        return frozenset({PostTypeLabel.STATUS})
    if structure in (InternalStructure.PNA1, InternalStructure.PNAN):
        return frozenset({PostTypeLabel.REPLY, PostTypeLabel.COTWEET})
    if structure is InternalStructure.INDETERMINATE:
        return frozenset({PostTypeLabel.CROPPED_SNAPSHOT})
    return frozenset()
