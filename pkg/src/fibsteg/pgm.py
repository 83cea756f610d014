"""8-bit grayscale PGM (P5 binary / P2 ASCII) reading and writing.

Images are plain 2-D ``uint8`` numpy arrays, row-major, top-left first.
"""
from __future__ import annotations

import os
import re

import numpy as np


class PgmError(ValueError):
    """Malformed or truncated PGM data."""


class UnsupportedDepthError(PgmError):
    """maxval above 255."""


_WS = b" \t\r\n\v\f"


def as_gray_image(img) -> np.ndarray:
    """Validate and return ``img`` as a 2-D uint8 array (no copy when possible)."""
    arr = np.asarray(img)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"expected a non-empty 2-D grayscale image, got shape {arr.shape}")
    if arr.dtype != np.uint8:
        if not np.issubdtype(arr.dtype, np.integer) or arr.min() < 0 or arr.max() > 255:
            raise ValueError("pixel values must be integers in 0..255")
        arr = arr.astype(np.uint8)
    return arr


def _header_tokens(data: bytes, count: int):
    """Pull ``count`` whitespace-separated header tokens, skipping '#' comments.

    Returns the tokens and the offset just past the last token.
    """
    tokens = []
    pos = 0
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WS:
            pos += 1
        if pos >= n:
            raise PgmError("truncated PGM header")
        if data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WS and data[pos] != ord("#"):
            pos += 1
        tokens.append(data[start:pos])
    return tokens, pos


def read_pgm(data: bytes) -> np.ndarray:
    if data[:2] not in (b"P5", b"P2"):
        raise PgmError(f"unsupported magic {data[:2]!r}; expected P5 or P2")
    magic = data[:2]
    tokens, pos = _header_tokens(data, 4)
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise PgmError(f"non-numeric PGM header field in {tokens[1:]!r}") from None
    if width < 1 or height < 1:
        raise PgmError(f"invalid dimensions {width}x{height}")
    if maxval < 1:
        raise PgmError(f"invalid maxval {maxval}")
    if maxval > 255:
        raise UnsupportedDepthError(f"maxval {maxval} > 255 is not supported")
    npix = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        if pos >= len(data) or data[pos] not in _WS:
            raise PgmError("missing whitespace after maxval")
        raster = data[pos + 1:pos + 1 + npix]
        if len(raster) < npix:
            raise PgmError(f"truncated raster: expected {npix} bytes, got {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\r\n]*", b"", data[pos:])
        fields = body.split()
        if len(fields) < npix:
            raise PgmError(f"truncated raster: expected {npix} samples, got {len(fields)}")
        try:
            pixels = np.array([int(f) for f in fields[:npix]], dtype=np.int64)
        except ValueError:
            raise PgmError("non-numeric sample in ASCII raster") from None
    if pixels.max() > maxval:
        raise PgmError(f"sample exceeds maxval {maxval}")
    return pixels.astype(np.uint8).reshape(height, width)


def write_pgm(img) -> bytes:
    img = as_gray_image(img)
    h, w = img.shape
    return b"P5\n%d %d\n255\n" % (w, h) + np.ascontiguousarray(img).tobytes()


def load_pgm(path: str | os.PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(path: str | os.PathLike, img) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img))
