"""Shared fixtures: wordlist, document factory, tiny PNG bytes."""

from __future__ import annotations

import struct
import zlib

import pytest

from shotparse import OcrDocument, SidecarSource, default_wordlist


@pytest.fixture(scope="session")
def wl():
    return default_wordlist()


@pytest.fixture
def make_doc():
    def _make(lines, screenshot_id="shot"):
        return OcrDocument(
            screenshot_id=screenshot_id,
            lines=tuple(lines),
            source=SidecarSource(path="<test>"),
        )

    return _make


def png_bytes(width=1, height=1, rgb=(255, 255, 255)) -> bytes:
    """A minimal valid PNG, for exercising the OCR adapter."""

    def chunk(tag: bytes, data: bytes) -> bytes:
        return (
            struct.pack(">I", len(data))
            + tag
            + data
            + struct.pack(">I", zlib.crc32(tag + data) & 0xFFFFFFFF)
        )

    header = struct.pack(">IIBBBBB", width, height, 8, 2, 0, 0, 0)
    row = b"\x00" + bytes(rgb) * width
    body = zlib.compress(row * height)
    return (
        b"\x89PNG\r\n\x1a\n"
        + chunk(b"IHDR", header)
        + chunk(b"IDAT", body)
        + chunk(b"IEND", b"")
    )
