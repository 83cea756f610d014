"""Seeded, portable pseudo-random source (xorshift64*).

The seed doubles as the shared stego key: keyed embedders derive their pixel
visiting order from ``KeyStream(seed).permutation(n)``. Not cryptographic.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
MULTIPLIER = 2685821657736338717
ZERO_SEED_REMAP = 0x9E3779B97F4A7C15  # xorshift state must be nonzero
MESSAGE_SEED_SALT = 0xD1B54A32D192ED03  # separates message draws from the visiting order


class KeyStream:
    def __init__(self, seed: int):
        if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
            raise TypeError("seed must be an integer")
        seed = int(seed)
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed {seed} is not an unsigned 64-bit integer")
        self.seed = seed
        self.state = seed if seed else ZERO_SEED_REMAP

    def next_u64(self) -> int:
        s = self.state
        s ^= s >> 12
        s ^= (s << 25) & MASK64
        s ^= s >> 27
        self.state = s
        return (s * MULTIPLIER) & MASK64

    def permutation(self, n: int) -> np.ndarray:
        """Fisher-Yates shuffle of ``0..n-1``.

        Walks ``i = n-1 .. 1`` swapping position ``i`` with ``next_u64() % (i + 1)``.
        The modulo bias is below 2**-43 for n <= 2**20 and is accepted.
        """
        if n < 0:
            raise ValueError("n must be non-negative")
        perm = list(range(n))
        s = self.state
        for i in range(n - 1, 0, -1):
            s ^= s >> 12
            s ^= (s << 25) & MASK64
            s ^= s >> 27
            j = ((s * MULTIPLIER) & MASK64) % (i + 1)
            perm[i], perm[j] = perm[j], perm[i]
        self.state = s
        return np.array(perm, dtype=np.int64)

    def message_bits(self, n: int) -> np.ndarray:
        """``n`` bits, each the low bit of a fresh draw."""
        if n < 0:
            raise ValueError("n must be non-negative")
        out = bytearray(n)
        s = self.state
        for i in range(n):
            s ^= s >> 12
            s ^= (s << 25) & MASK64
            s ^= s >> 27
            # the multiplier is odd, so the output's low bit is the state's low bit
            out[i] = s & 1
        self.state = s
        return np.frombuffer(bytes(out), dtype=np.uint8).copy()


def message_stream(seed: int) -> KeyStream:
    """Stream used for synthetic messages, decorrelated from ``KeyStream(seed)``."""
    return KeyStream((int(seed) ^ MESSAGE_SEED_SALT) & MASK64)
