"""Deterministic pseudo-random numbers for frames, probe lines and oracle targets.

Reports must be byte-identical across runs and Python versions, so we use a
small SplitMix64 generator instead of the stdlib Mersenne Twister.
"""

from __future__ import annotations

_MASK = (1 << 64) - 1


class SplitMix64:
    """64-bit SplitMix generator; identical stream for identical seeds."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (inclusive)."""
        if hi < lo:
            raise ValueError("empty range")
        span = hi - lo + 1
        # rejection sampling keeps the distribution exactly uniform
        limit = (1 << 64) - ((1 << 64) % span)
        while True:
            v = self.next_u64()
            if v < limit:
                return lo + (v % span)

    def int_vector(self, length: int, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(self.randint(lo, hi) for _ in range(length))

    def nonzero_vector(self, length: int, lo: int, hi: int) -> tuple[int, ...]:
        while True:
            v = self.int_vector(length, lo, hi)
            if any(v):
                return v
