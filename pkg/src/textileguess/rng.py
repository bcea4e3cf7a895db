"""Deterministic random primitives: splitmix64 and FNV-1a.

Everything that must reproduce bit-for-bit across runs (mock embeddings,
assignment shuffles, token dropout) is driven by these instead of the
stdlib RNG, whose stream is not pinned by any contract.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
SPLITMIX_GOLDEN = 0x9E3779B97F4A7C15

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash of a byte string."""
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & MASK64
    return h


def splitmix64_mix(z: int) -> int:
    """The splitmix64 output mix applied to a 64-bit state value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """Tiny deterministic generator. state_i = seed + i*golden, mixed."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + SPLITMIX_GOLDEN) & MASK64
        return splitmix64_mix(self._state)

    def next_below(self, n: int) -> int:
        """Uniform-ish integer in [0, n). Modulo bias is irrelevant at the
        candidate-set sizes used here; determinism is what matters."""
        if n <= 0:
            raise ValueError("n must be positive")
        return self.next_u64() % n

    def next_unit(self) -> float:
        """Float in [0, 1)."""
        return self.next_u64() / 2**64

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle driven by this generator."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]


def splitmix64_fill(seed: int, n: int) -> np.ndarray:
    """First n outputs of SplitMix64(seed) as a uint64 array.

    Vectorised equivalent of calling next_u64() n times; the two paths are
    checked against each other in the test suite.
    """
    with np.errstate(over="ignore"):
        z = (np.uint64(seed & MASK64)
             + np.arange(1, n + 1, dtype=np.uint64) * np.uint64(SPLITMIX_GOLDEN))
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return z ^ (z >> np.uint64(31))


def units_from_u64(words: np.ndarray) -> np.ndarray:
    """Map raw 64-bit outputs u to 2*(u / 2**64) - 1 in [-1, 1), as float64."""
    return words.astype(np.float64) * 2.0**-64 * 2.0 - 1.0
