"""Synthetic screenshot-text fixtures with matching ground truth.

Real annotated screenshot corpora are private, so fixtures stand in: each
one is an OCR-shaped text document rendered from line templates that mimic
the platform's web and mobile layouts, paired with the annotation it must
parse back to. Everything is deterministic in the seed. A seeded noise
model reproduces the dominant real-world failure mode, OCR character
confusion.
"""

from __future__ import annotations

import datetime as dt
import json
import random
import re
import textwrap
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .errors import InconsistentSpec
from .evaluation import Annotation, AnnotationUnit
from .handles import HANDLE_MAX, HANDLE_MIN
from .ocr import GeneratedSource, OcrDocument
from .structure import InternalStructure

WEB_LIGHT = "web_light"
MOBILE_LIGHT = "mobile_light"

_HANDLE_OK = re.compile(r"[A-Za-z0-9_]+\Z")

# Invented proper-noun-like names, disjoint from the bundled wordlist so a
# fixture's header lines never trip the common-word filter.
FIRST_NAMES = (
    "Zorina", "Kelvend", "Maribex", "Tovash", "Quindra", "Velmor",
    "Ostrek", "Jarvex", "Lumeya", "Drossel", "Vintara", "Corvann",
    "Selbrix", "Mundrel", "Ashveil", "Norlith",
)
LAST_NAMES = (
    "Ontrix", "Qarvel", "Belmora", "Strandiv", "Kolveth", "Merroway",
    "Dunvaro", "Yelkirk", "Prandel", "Vostrim", "Halbrek", "Norvex",
    "Tremondi", "Galvorn", "Rexfell", "Ombrell",
)

# Ordinary language for post bodies; body lines are never wordlist-checked.
BODY_WORDS = (
    "the quiet river keeps its old maps and nobody reads them twice "
    "every morning we trade small truths for faster answers and call it news "
    "somewhere a garden grows past its fence because no one told it to stop "
    "people remember the weather of a day long after they forget the date "
    "a good question outlives every answer given to it "
    "never promise the moon to someone who only asked for a lamp"
).split()

DEFAULT_CONFUSIONS = {
    "O": "0", "0": "O",
    "l": "1", "1": "l",
    "m": "rn",
    "S": "5", "5": "S",
    "I": "l",
    "B": "8",
}

# Class mix of the default corpus, approximating the observed skew of real
# screenshot collections: mostly single posts, some threads, few
# single-author threads.
DEFAULT_MIX = (
    (InternalStructure.P1A1, 0.70),
    (InternalStructure.PNAN, 0.24),
    (InternalStructure.PNA1, 0.06),
)
DEFAULT_COUNT = 200
DEFAULT_SEED = 42


@lru_cache(maxsize=1)
def load_layouts() -> dict:
    """Line templates per layout, kept as data so new platform renderings
    are added without code changes."""
    raw = resources.files("shotparse").joinpath("data/layouts.json").read_text("utf-8")
    return json.loads(raw)["layouts"]


@dataclass(frozen=True)
class FixtureSpec:
    """Recipe for one synthetic screenshot."""

    structure: InternalStructure
    n_posts: int
    authors: tuple[str, ...]
    timestamps: tuple[dt.datetime, ...]
    bodies: tuple[str, ...]
    layout: str = MOBILE_LIGHT
    seed: int = 0


@dataclass(frozen=True)
class NoiseModel:
    """Seeded character-confusion noise; rate is the per-character
    substitution probability for characters with a confusion entry."""

    substitution_rate: float
    confusion_pairs: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_CONFUSIONS))
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.substitution_rate <= 1.0:
            raise ValueError("substitution_rate must be in [0, 1]")
        for source, target in self.confusion_pairs.items():
            if len(source) != 1 or "\n" in target:
                raise ValueError("confusion pairs map single characters to line-safe text")


def _validate_spec(spec: FixtureSpec) -> None:
    if spec.n_posts < 1:
        raise InconsistentSpec("n_posts must be >= 1")
    if len(spec.bodies) != spec.n_posts or len(spec.timestamps) != spec.n_posts:
        raise InconsistentSpec("timestamps and bodies must have n_posts entries")
    if len(spec.authors) != spec.n_posts:
        raise InconsistentSpec("authors must have n_posts entries (repeats allowed)")
    for handle in spec.authors:
        if not (HANDLE_MIN <= len(handle) <= HANDLE_MAX) or not _HANDLE_OK.match(handle):
            raise InconsistentSpec(f"bad handle {handle!r}")
    for body in spec.bodies:
        if not body.strip():
            raise InconsistentSpec("empty body")
        if "@" in body:
            raise InconsistentSpec("bodies must not contain @-mentions")
    distinct = len({a.lower() for a in spec.authors})
    expected = {
        InternalStructure.P1A1: spec.n_posts == 1 and distinct == 1,
        InternalStructure.PNA1: spec.n_posts >= 2 and distinct == 1,
        InternalStructure.PNAN: spec.n_posts >= 2 and distinct >= 2,
    }
    if spec.structure not in expected:
        raise InconsistentSpec(f"{spec.structure.value} fixtures are not renderable")
    if not expected[spec.structure]:
        raise InconsistentSpec(
            f"{spec.n_posts} posts by {distinct} authors is not {spec.structure.value}"
        )
    if spec.layout not in load_layouts():
        raise InconsistentSpec(f"unknown layout {spec.layout!r}")


def _format_time(stamp: dt.datetime) -> str:
    hour = stamp.hour % 12 or 12
    ampm = "AM" if stamp.hour < 12 else "PM"
    return f"{hour}:{stamp.minute:02d} {ampm}"


def _format_date(stamp: dt.datetime) -> str:
    months = ("Jan", "Feb", "Mar", "Apr", "May", "Jun",
              "Jul", "Aug", "Sep", "Oct", "Nov", "Dec")
    return f"{months[stamp.month - 1]} {stamp.day}, {stamp.year}"


def _format_views(rng: random.Random) -> str:
    if rng.random() < 0.5:
        return str(rng.randint(3, 999))
    return f"{rng.randint(10, 99) / 10:.1f}{rng.choice('KM')}"


def display_name_for(handle: str, rng: random.Random) -> str:
    return f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"


def generate_fixture(spec: FixtureSpec, screenshot_id: str | None = None) -> tuple[OcrDocument, Annotation]:
    """Render the spec into a document and its ground-truth annotation.

    Deterministic in the seed; running the pipeline on the output
    reproduces the spec's structure, authors, dates, and bodies.
    """
    _validate_spec(spec)
    rng = random.Random(spec.seed)
    layout = load_layouts()[spec.layout]
    if screenshot_id is None:
        screenshot_id = f"fx-{spec.seed & 0xFFFFFFFFFFFFFFFF:016x}"

    names: dict[str, str] = {}
    lines: list[str] = []
    for i in range(spec.n_posts):
        handle = spec.authors[i]
        if handle.lower() not in names:
            names[handle.lower()] = display_name_for(handle, rng)
        values = {
            "display_name": names[handle.lower()],
            "handle": handle,
            "time": _format_time(spec.timestamps[i]),
            "date": _format_date(spec.timestamps[i]),
            "views": _format_views(rng),
        }
        if i > 0:
            lines.extend(layout["separator_lines"])
        for template in layout["post_lines"]:
            if "{body}" in template:
                lines.extend(textwrap.wrap(spec.bodies[i], width=layout["body_wrap"]))
            else:
                lines.append(template.format(**values))

    doc = OcrDocument(
        screenshot_id=screenshot_id,
        lines=tuple(lines),
        source=GeneratedSource(seed=spec.seed),
    )
    annotation = Annotation(
        screenshot_id=screenshot_id,
        true_structure=spec.structure,
        units=tuple(
            AnnotationUnit(
                author=spec.authors[i],
                date=spec.timestamps[i].date(),
                body=spec.bodies[i],
            )
            for i in range(spec.n_posts)
        ),
    )
    return doc, annotation


def perturb(doc: OcrDocument, noise: NoiseModel) -> OcrDocument:
    """Apply seeded character confusions; line structure is unchanged and
    rate 0 is the identity."""
    rng = random.Random(noise.seed)
    new_lines = []
    for line in doc.lines:
        chars = []
        for ch in line:
            if ch in noise.confusion_pairs and rng.random() < noise.substitution_rate:
                chars.append(noise.confusion_pairs[ch])
            else:
                chars.append(ch)
        new_lines.append("".join(chars))
    return OcrDocument(
        screenshot_id=doc.screenshot_id,
        lines=tuple(new_lines),
        source=doc.source,
    )


def _class_counts(count: int, mix) -> list[tuple[InternalStructure, int]]:
    """Largest-remainder apportionment of the class mix."""
    raw = [(structure, count * fraction) for structure, fraction in mix]
    floored = [(s, int(x)) for s, x in raw]
    shortfall = count - sum(n for _, n in floored)
    remainders = sorted(
        range(len(raw)), key=lambda i: raw[i][1] - floored[i][1], reverse=True
    )
    result = list(floored)
    for i in remainders[:shortfall]:
        result[i] = (result[i][0], result[i][1] + 1)
    return result


def _random_body(rng: random.Random) -> str:
    return " ".join(rng.choice(BODY_WORDS) for _ in range(rng.randint(5, 24)))


def _random_handle(rng: random.Random) -> str:
    base = rng.choice(FIRST_NAMES).lower()
    suffix = rng.choice(["", "_", str(rng.randint(0, 99))])
    handle = (base + suffix)[:HANDLE_MAX]
    return handle if len(handle) >= HANDLE_MIN else handle + "_x"


def _random_stamp(rng: random.Random) -> dt.datetime:
    start = dt.datetime(2015, 1, 1)
    return start + dt.timedelta(
        days=rng.randint(0, 10 * 365), hours=rng.randint(0, 23), minutes=rng.randint(0, 59)
    )


def random_spec(
    structure: InternalStructure, seed: int, layout: str | None = None
) -> FixtureSpec:
    """A randomized but internally consistent spec for one structure class."""
    rng = random.Random(seed)
    if layout is None:
        layout = rng.choice([WEB_LIGHT, MOBILE_LIGHT])
    if structure is InternalStructure.P1A1:
        n_posts = 1
        authors = [_random_handle(rng)]
    elif structure is InternalStructure.PNA1:
        n_posts = rng.randint(2, 4)
        authors = [_random_handle(rng)] * n_posts
    elif structure is InternalStructure.PNAN:
        n_posts = rng.randint(2, 4)
        first, second = _random_handle(rng), _random_handle(rng)
        while second.lower() == first.lower():
            second = _random_handle(rng)
        authors = [first if i % 2 == 0 else second for i in range(n_posts)]
    else:
        raise InconsistentSpec(f"{structure.value} fixtures are not renderable")
    stamps = sorted(_random_stamp(rng) for _ in range(n_posts))
    return FixtureSpec(
        structure=structure,
        n_posts=n_posts,
        authors=tuple(authors),
        timestamps=tuple(stamps),
        bodies=tuple(_random_body(rng) for _ in range(n_posts)),
        layout=layout,
        seed=seed,
    )


@dataclass(frozen=True)
class FixtureItem:
    doc: OcrDocument
    annotation: Annotation
    spec: FixtureSpec


def build_corpus(
    count: int = DEFAULT_COUNT,
    seed: int = DEFAULT_SEED,
    mix=DEFAULT_MIX,
) -> list[FixtureItem]:
    """The default fixture corpus: deterministic in (count, seed, mix).

    Per-fixture randomness is derived as ``seed ^ index`` so fixtures can be
    regenerated independently and in parallel.
    """
    classes: list[InternalStructure] = []
    for structure, n in _class_counts(count, mix):
        classes.extend([structure] * n)
    random.Random(seed).shuffle(classes)
    corpus = []
    for index, structure in enumerate(classes):
        spec = random_spec(structure, seed ^ index)
        doc, annotation = generate_fixture(spec, screenshot_id=f"fx{index:04d}")
        corpus.append(FixtureItem(doc=doc, annotation=annotation, spec=spec))
    return corpus
