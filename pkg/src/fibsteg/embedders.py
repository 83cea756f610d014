"""Embedding and extraction schemes.

Four methods share one ``embed`` / ``extract`` surface:

* ``LSB_SEQUENTIAL``  binary LSB replacement, row-major order
* ``LSB_RANDOM``      binary LSB replacement, keyed random order
* ``FIB_RANDOM``      Fibonacci-plane replacement in keyed random order; pixels
                      whose codeword would lose Zeckendorf validity are skipped
* ``PROPOSED_MAPPED`` two secret bits per pixel, mapped onto the three lowest
                      Fibonacci planes (secret pair read back from planes 3 and 1)
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import zeckendorf as zk
from .keystream import KeyStream, message_stream
from .pgm import as_gray_image

HEADER_BITS = 32
FALLBACK_COVER = 253


class CapacityError(ValueError):
    """Message does not fit in the cover under the chosen method."""


class CorruptStreamError(ValueError):
    """Length header is implausible for this stego image."""


class InvalidCodewordError(ValueError):
    """3-plane pattern that no Zeckendorf codeword can carry."""


class Method(str, enum.Enum):
    LSB_SEQUENTIAL = "lsb-seq"
    LSB_RANDOM = "lsb-random"
    FIB_RANDOM = "fib-random"
    PROPOSED_MAPPED = "mapped"

    @property
    def max_rate(self) -> float:
        return 2.0 if self is Method.PROPOSED_MAPPED else 1.0

    @classmethod
    def parse(cls, name) -> "Method":
        if isinstance(name, cls):
            return name
        try:
            return cls(name)
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown method {name!r} (choose from {choices})") from None


class SecretPair(NamedTuple):
    hi: int  # first-consumed bit, carried in plane 3
    lo: int  # second bit, carried in plane 1


# Three lowest planes as an int b3b2b1; these five are the only ones a valid codeword can show.
REACHABLE_PATTERNS = (0b000, 0b001, 0b010, 0b100, 0b101)


def map3(cover3: int, secret) -> int:
    """Mapping table: new (b3, b2, b1) for a cover pattern and a secret pair."""
    if cover3 not in REACHABLE_PATTERNS:
        raise InvalidCodewordError(f"pattern {cover3:03b} cannot occur in a Zeckendorf codeword")
    hi, lo = secret
    if cover3 == 0b010 and hi == 0 and lo == 0:
        return 0b010
    return (hi << 2) | lo


def _embed_pixel_once(cover_value: int, secret) -> int:
    c = zk.encode(cover_value).mask
    new3 = map3(c & 0b111, secret)
    m = (c & ~0b111) | new3
    # repair: setting plane 3 beside a set plane 4 would break validity
    if new3 & 0b100 and not c & 0b100 and c & 0b1000:
        m &= ~0b1000
    return zk.mask_value(m)


def embed_pixel_mapped(cover_value: int, secret) -> int:
    """Stego value carrying ``secret`` in planes (3, 1) of its codeword.

    Covers 254 and 255 can map above 255 when the high secret bit is set; those
    are re-embedded from 253, whose plane 4 is set, so the repair step pulls the
    value back into range.
    """
    if not 0 <= cover_value <= 255:
        raise ValueError(f"cover value {cover_value} outside 0..255")
    out = _embed_pixel_once(cover_value, secret)
    if out > 255:
        out = _embed_pixel_once(FALLBACK_COVER, secret)
    return out


def extract_pixel_mapped(stego_value: int) -> SecretPair:
    c = zk.encode(stego_value)
    return SecretPair(c.bit(3), c.bit(1))


def _build_mapped_tables():
    stego = np.empty((256, 4), dtype=np.uint8)
    fallback = np.zeros((256, 4), dtype=bool)
    for v in range(256):
        for s in range(4):
            pair = SecretPair(s >> 1, s & 1)
            stego[v, s] = embed_pixel_mapped(v, pair)
            fallback[v, s] = _embed_pixel_once(v, pair) > 255
    return stego, fallback


# MAPPED_STEGO[cover, 2*hi + lo] -> stego value
MAPPED_STEGO, MAPPED_FALLBACK = _build_mapped_tables()
_STEGO_MASKS = zk.ENCODE_TABLE[:256]


@dataclass
class EmbedJob:
    """Parameters for one embedding run.

    Supply exactly one of ``rate`` (synthetic message of ceil(rate * N) bits drawn
    from the seed, no header) or ``message`` (explicit bits, length-prefixed
    unless ``header`` is False).
    """

    method: Method
    seed: int = 0
    rate: float | None = None
    message: np.ndarray | None = None
    header: bool = True
    random_order: bool = False  # PROPOSED_MAPPED only; baselines fix their own order
    plane: int = 1  # FIB_RANDOM only

    def __post_init__(self):
        self.method = Method.parse(self.method)
        if (self.rate is None) == (self.message is None):
            raise ValueError("supply exactly one of rate or message")
        if self.rate is not None and not 0 <= self.rate <= self.method.max_rate:
            raise ValueError(
                f"rate {self.rate} outside 0..{self.method.max_rate} for {self.method.value}")
        if not 1 <= self.plane <= zk.N_PLANES:
            raise ValueError(f"plane {self.plane} outside 1..{zk.N_PLANES}")
        if self.message is not None:
            self.message = as_bits(self.message)


@dataclass
class StegoResult:
    stego: np.ndarray
    message: np.ndarray  # payload bits requested (no header)
    bits_embedded: int  # payload bits actually carried (no header)
    pixels_visited: int
    pixels_skipped: int = 0
    pixels_fallback: int = 0
    max_abs_delta: int = 0


def as_bits(bits) -> np.ndarray:
    arr = np.asarray(bits)
    if arr.ndim != 1:
        arr = arr.ravel()
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("message bits must be 0 or 1")
    return arr.astype(np.uint8)


def bytes_to_bits(data: bytes) -> np.ndarray:
    """Unpack bytes MSB-first."""
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


def bits_to_bytes(bits) -> bytes:
    """Pack bits MSB-first; a ragged tail is zero-padded."""
    return np.packbits(as_bits(bits)).tobytes()


def _length_header(n: int) -> np.ndarray:
    return bytes_to_bits(n.to_bytes(4, "big"))


def rate_message_length(rate: float, n_pixels: int) -> int:
    # round() absorbs float noise such as 0.1 * 10 -> 1.0000000000000002
    return math.ceil(round(rate * n_pixels, 9))


@functools.lru_cache(maxsize=None)
def _candidate_table(plane: int) -> np.ndarray:
    table = np.zeros(256, dtype=bool)
    for v in range(256):
        m = int(_STEGO_MASKS[v])
        bit = 1 << (plane - 1)
        neighbours = m & ((bit << 1) | (bit >> 1))
        # e.g. 254 = 233 + 21 has planes 1 and 3 clear, but setting plane 2 gives 256
        table[v] = not neighbours and zk.mask_value(m | bit) <= 255
    table.flags.writeable = False
    return table


def fib_candidates(values, plane: int = 1) -> np.ndarray:
    """Pixels whose Fibonacci plane ``plane`` may take either bit.

    A pixel qualifies when both neighbouring planes are clear and setting the
    plane keeps the value within 0..255. Neither test looks at the plane itself,
    so embedding never changes which pixels qualify.
    """
    if not 1 <= plane <= zk.N_PLANES:
        raise ValueError(f"plane {plane} outside 1..{zk.N_PLANES}")
    return _candidate_table(plane)[np.asarray(values, dtype=np.uint8)]


def capacity(method, cover, plane: int = 1) -> int:
    """Payload bits the cover can carry (before any length header)."""
    method = Method.parse(method)
    cover = as_gray_image(cover)
    n = cover.size
    if method is Method.PROPOSED_MAPPED:
        return 2 * n
    if method is Method.FIB_RANDOM:
        return int(fib_candidates(cover.ravel(), plane).sum())
    return n


@functools.lru_cache(maxsize=8)
def _keyed_order(seed: int, n: int) -> np.ndarray:
    perm = KeyStream(seed).permutation(n)
    perm.flags.writeable = False
    return perm


def visit_order(method: Method, n: int, seed: int, random_order: bool = False) -> np.ndarray:
    """Pixel visiting order: a keyed permutation for the random methods, else row-major."""
    if method in (Method.LSB_RANDOM, Method.FIB_RANDOM) or (
            method is Method.PROPOSED_MAPPED and random_order):
        return _keyed_order(int(seed), n)
    return np.arange(n)


def embed(cover, job: EmbedJob) -> StegoResult:
    cover = as_gray_image(cover)
    method = job.method
    n = cover.size
    cap = capacity(method, cover, job.plane)

    if job.rate is not None:
        payload = message_stream(job.seed).message_bits(rate_message_length(job.rate, n))
        stream = payload
        if len(stream) > cap and method is not Method.FIB_RANDOM:
            raise CapacityError(f"{len(stream)} bits exceed capacity {cap}")
        # FIB_RANDOM at high rates simply runs out of candidates; the shortfall is reported
        stream = stream[:cap]
    else:
        payload = job.message
        stream = np.concatenate([_length_header(len(payload)), payload]) if job.header else payload
        if len(stream) > cap:
            raise CapacityError(f"{len(stream)} bits (incl. header) exceed capacity {cap}")

    flat = cover.ravel()
    stego = flat.copy()
    order = visit_order(method, n, job.seed, job.random_order)
    L = len(stream)
    skipped = fallback = 0

    if method in (Method.LSB_SEQUENTIAL, Method.LSB_RANDOM):
        idx = order[:L]
        stego[idx] = (flat[idx] & 0xFE) | stream
        visited = L
    elif method is Method.FIB_RANDOM:
        walk = flat[order]
        cand_pos = np.flatnonzero(fib_candidates(walk, job.plane))[:L]
        visited = int(cand_pos[-1]) + 1 if L else 0
        skipped = visited - L
        idx = order[cand_pos]
        bit = 1 << (job.plane - 1)
        masks = _STEGO_MASKS[walk[cand_pos]].astype(np.int64)
        new_masks = (masks & ~bit) | (stream.astype(np.int64) << (job.plane - 1))
        stego[idx] = zk.decode_array(new_masks)
    else:
        padded = np.concatenate([stream, np.zeros(L % 2, dtype=np.uint8)])
        pairs = padded.reshape(-1, 2)
        code = 2 * pairs[:, 0] + pairs[:, 1]
        idx = order[:len(pairs)]
        stego[idx] = MAPPED_STEGO[flat[idx], code]
        fallback = int(MAPPED_FALLBACK[flat[idx], code].sum())
        visited = len(pairs)

    stego = stego.reshape(cover.shape)
    delta = np.abs(stego.astype(np.int16) - cover.astype(np.int16))
    header_bits = HEADER_BITS if job.message is not None and job.header else 0
    return StegoResult(
        stego=stego,
        message=payload,
        bits_embedded=L - header_bits,
        pixels_visited=visited,
        pixels_skipped=skipped,
        pixels_fallback=fallback,
        max_abs_delta=int(delta.max()),
    )


def _read_stream(flat: np.ndarray, method: Method, order: np.ndarray, plane: int):
    """Lazy reader: returns a function giving the first ``k`` carried bits."""
    if method in (Method.LSB_SEQUENTIAL, Method.LSB_RANDOM):
        return lambda start, k: flat[order[start:start + k]] & 1
    if method is Method.FIB_RANDOM:
        walk = flat[order]
        carried = zk.plane(_STEGO_MASKS[walk[fib_candidates(walk, plane)]], plane).astype(np.uint8)
        return lambda start, k: carried[start:start + k]

    def mapped(start, k):
        first, last = start // 2, (start + k + 1) // 2
        masks = _STEGO_MASKS[flat[order[first:last]]]
        pairs = np.stack([zk.plane(masks, 3), zk.plane(masks, 1)], axis=1).ravel()
        off = start - 2 * first
        return pairs[off:off + k].astype(np.uint8)
    return mapped


def extract(stego, method, seed: int = 0, length: int | None = None, *,
            random_order: bool = False, plane: int = 1) -> np.ndarray:
    """Recover the payload bits.

    ``length=None`` reads the 32-bit length header written by ``embed`` in
    message mode; otherwise exactly ``length`` bits are read with no header.
    """
    method = Method.parse(method)
    stego = as_gray_image(stego)
    cap = capacity(method, stego, plane)
    flat = stego.ravel()
    order = visit_order(method, flat.size, seed, random_order)
    read = _read_stream(flat, method, order, plane)

    if length is None:
        if cap < HEADER_BITS:
            raise CorruptStreamError("image too small to hold a length header")
        head = read(0, HEADER_BITS)
        n = int.from_bytes(bits_to_bytes(head), "big")
        if n > cap - HEADER_BITS:
            raise CorruptStreamError(f"header claims {n} bits but capacity is {cap - HEADER_BITS}")
        return read(HEADER_BITS, n)
    if length < 0 or length > cap:
        raise CapacityError(f"cannot read {length} bits; capacity is {cap}")
    return read(0, length)
