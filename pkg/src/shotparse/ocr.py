"""Ordered-line text documents recovered from screenshots.

Text can come from an external OCR engine run as a subprocess, or from a
pre-extracted plain-text sidecar file (one OCR line per line, named
``<screenshot_id>.txt``). OCR itself is always delegated; this module only
owns the invocation plumbing and the line representation.
"""

from __future__ import annotations

import shutil
import subprocess
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EngineFailure, EngineNotFound, InvalidEncoding, UnreadableImage
from .textnorm import split_lines

# Magic prefixes of raster formats the adapter accepts.
_RASTER_MAGIC = (
    b"\x89PNG\r\n\x1a\n",
    b"\xff\xd8\xff",  # JPEG
    b"GIF87a",
    b"GIF89a",
    b"BM",  # BMP
)


@dataclass(frozen=True)
class EngineSource:
    """Provenance for text produced by an external OCR engine."""

    engine_name: str
    version: str | None = None


@dataclass(frozen=True)
class SidecarSource:
    """Provenance for text loaded from a sidecar file."""

    path: str


@dataclass(frozen=True)
class GeneratedSource:
    """Provenance for synthetic fixture documents."""

    seed: int


@dataclass(frozen=True)
class OcrDocument:
    """Ordered text lines recovered from one screenshot.

    Line indices are implicit: ``lines[i]`` is line ``i``. Lines never
    contain line breaks; interior empty lines are preserved because the
    grouping step relies on vertical layout.
    """

    screenshot_id: str
    lines: tuple[str, ...]
    source: EngineSource | SidecarSource | GeneratedSource

    def __post_init__(self):
        for i, line in enumerate(self.lines):
            if "\n" in line or "\r" in line:
                raise ValueError(f"line {i} contains a line break")

    @property
    def is_empty(self) -> bool:
        return len(self.lines) == 0

    def line(self, index: int) -> str:
        return self.lines[index]


@dataclass(frozen=True)
class EngineConfig:
    """How to invoke the external OCR engine.

    ``argv`` is a command template; every occurrence of ``{input}`` is
    replaced with the image path. The engine must print recognized text to
    stdout and exit 0 on success. Engine settings (language pack, layout
    mode) belong in ``argv`` and are kept in the document provenance via
    ``name``/``version`` for reproducibility.
    """

    name: str
    argv: tuple[str, ...] = field(default_factory=tuple)
    version: str | None = None

    def command_for(self, image_path: str) -> list[str]:
        if not any("{input}" in a for a in self.argv):
            raise ValueError("engine argv has no {input} placeholder")
        return [a.replace("{input}", image_path) for a in self.argv]


def _looks_like_raster(path: Path) -> bool:
    try:
        head = path.open("rb").read(12)
    except OSError:
        return False
    if head[:4] == b"RIFF" and head[8:12] == b"WEBP":
        return True
    return any(head.startswith(magic) for magic in _RASTER_MAGIC)


def run_ocr(image_path: str | Path, engine: EngineConfig) -> OcrDocument:
    """Invoke the OCR engine on an image and wrap its stdout as a document.

    Stdout is split on line breaks in top-to-bottom order; trailing empty
    lines are removed, interior ones kept.

    Raises UnreadableImage if the image is missing or not a raster file,
    EngineNotFound if the executable cannot be resolved, and EngineFailure
    on a nonzero exit (stderr is captured on the exception).
    """
    image_path = Path(image_path)
    if not image_path.is_file() or not _looks_like_raster(image_path):
        raise UnreadableImage(str(image_path))

    command = engine.command_for(str(image_path))
    if shutil.which(command[0]) is None and not Path(command[0]).is_file():
        raise EngineNotFound(command[0])

    try:
        proc = subprocess.run(command, capture_output=True, text=True)
    except FileNotFoundError as exc:
        raise EngineNotFound(command[0]) from exc
    if proc.returncode != 0:
        raise EngineFailure(
            f"{engine.name} exited {proc.returncode}", stderr=proc.stderr
        )

    return OcrDocument(
        screenshot_id=image_path.stem,
        lines=tuple(split_lines(proc.stdout)),
        source=EngineSource(engine_name=engine.name, version=engine.version),
    )


def load_sidecar(text_path: str | Path, screenshot_id: str | None = None) -> OcrDocument:
    """Load a pre-extracted OCR sidecar file.

    Windows and old-Mac line endings are normalized before splitting, so the
    same document loads identically across platforms. The screenshot id
    defaults to the file stem, matching the ``<screenshot_id>.txt`` naming.
    """
    text_path = Path(text_path)
    if not text_path.is_file():
        raise FileNotFoundError(str(text_path))
    try:
        text = text_path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise InvalidEncoding(f"{text_path}: {exc}") from exc
    return OcrDocument(
        screenshot_id=screenshot_id if screenshot_id is not None else text_path.stem,
        lines=tuple(split_lines(text)),
        source=SidecarSource(path=str(text_path)),
    )


def save_sidecar(doc: OcrDocument, text_path: str | Path) -> None:
    """Write a document as a sidecar; ``load_sidecar`` round-trips it."""
    text_path = Path(text_path)
    body = "\n".join(doc.lines)
    text_path.write_text(body + "\n" if body else "", encoding="utf-8")
