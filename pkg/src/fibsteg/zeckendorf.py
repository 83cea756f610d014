"""Zeckendorf (canonical Fibonacci) codewords for 8-bit pixel values.

A codeword is 12 flags b(1)..b(12); position k carries weight ``FIB_WEIGHTS[k-1]``
and position 1 is the least significant plane. Internally a codeword is an
integer bitmask with bit ``k-1`` holding b(k). Text forms list b(1) first, i.e.
aligned under the weights 1, 2, 3, ..., 233 (so 255 prints as 100000100001).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

N_PLANES = 12
FIB_WEIGHTS = (1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233)
MAX_VALUE = 376  # largest sum of a valid 12-plane codeword

_FULL_MASK = (1 << N_PLANES) - 1


@dataclass(frozen=True)
class FibCodeword:
    mask: int

    def __post_init__(self):
        if not 0 <= self.mask <= _FULL_MASK:
            raise ValueError(f"codeword mask {self.mask:#x} wider than {N_PLANES} planes")

    @classmethod
    def from_positions(cls, positions: Iterable[int]) -> "FibCodeword":
        mask = 0
        for k in positions:
            if not 1 <= k <= N_PLANES:
                raise ValueError(f"plane position {k} outside 1..{N_PLANES}")
            mask |= 1 << (k - 1)
        return cls(mask)

    @classmethod
    def from_string(cls, text: str) -> "FibCodeword":
        """Parse the text form, b(1) first; spaces are ignored."""
        digits = text.replace(" ", "")
        if len(digits) > N_PLANES or set(digits) - {"0", "1"}:
            raise ValueError(f"not a {N_PLANES}-plane bit string: {text!r}")
        return cls(int(digits[::-1], 2) if digits else 0)

    def bit(self, k: int) -> int:
        return (self.mask >> (k - 1)) & 1

    def positions(self) -> set[int]:
        return {k for k in range(1, N_PLANES + 1) if self.bit(k)}

    @property
    def value(self) -> int:
        return decode(self)

    def __str__(self) -> str:
        return format(self.mask, f"0{N_PLANES}b")[::-1]


def _greedy_mask(value: int) -> int:
    mask = 0
    for k in range(N_PLANES, 0, -1):
        w = FIB_WEIGHTS[k - 1]
        if w <= value:
            value -= w
            mask |= 1 << (k - 1)
    return mask


def encode(value: int) -> FibCodeword:
    """Zeckendorf codeword of ``value`` (0..376), built greedily from the largest weight."""
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"value must be an integer, got {type(value).__name__}")
    if not 0 <= value <= MAX_VALUE:
        raise ValueError(f"value {value} outside 0..{MAX_VALUE}")
    return FibCodeword(_greedy_mask(int(value)))


def decode(code: FibCodeword) -> int:
    """Weighted sum of the set planes. Defined for invalid patterns too."""
    return mask_value(code.mask)


def is_valid(code: FibCodeword) -> bool:
    return mask_is_valid(code.mask)


def mask_value(mask: int) -> int:
    return sum(w for k, w in enumerate(FIB_WEIGHTS) if (mask >> k) & 1)


def mask_is_valid(mask: int) -> bool:
    return mask & (mask >> 1) == 0


# Lookup tables for the array paths used by the embedders.
ENCODE_TABLE = np.array([_greedy_mask(v) for v in range(MAX_VALUE + 1)], dtype=np.uint16)
_WEIGHT_ARRAY = np.array(FIB_WEIGHTS, dtype=np.int64)


def encode_array(values) -> np.ndarray:
    """Vectorised ``encode``: integer array in 0..376 to uint16 masks."""
    values = np.asarray(values)
    if values.size and (values.min() < 0 or values.max() > MAX_VALUE):
        raise ValueError(f"values outside 0..{MAX_VALUE}")
    return ENCODE_TABLE[values]


def decode_array(masks) -> np.ndarray:
    masks = np.asarray(masks, dtype=np.int64)
    bits = (masks[..., None] >> np.arange(N_PLANES)) & 1
    return bits @ _WEIGHT_ARRAY


def plane(masks, k: int) -> np.ndarray:
    """The k-th Fibonacci bit-plane (0/1 array) of an array of masks."""
    return (np.asarray(masks) >> (k - 1)) & 1
