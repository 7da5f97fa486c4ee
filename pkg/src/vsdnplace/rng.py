"""SplitMix64: a tiny, portable, seedable 64-bit generator.

The algorithm is fixed so that scenarios can be regenerated bit-for-bit by any
implementation::

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all arithmetic modulo 2**64.  Bounded integers use rejection sampling on the
raw 64-bit output (no modulo bias); see :meth:`SplitMix64.below`.
"""
from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + GOLDEN_GAMMA) & MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``.

        Draws are rejected while ``x < 2**64 mod n`` so that the accepted range
        is an exact multiple of ``n``; the result is ``x mod n``.
        """
        if n <= 0:
            raise ValueError("n must be positive")
        threshold = (1 << 64) % n
        while True:
            x = self.next_u64()
            if x >= threshold:
                return x % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in the closed range ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def sample(self, population: int, k: int) -> list[int]:
        """``k`` distinct values from ``range(population)``, in draw order.

        Partial Fisher-Yates: for i in 0..k-1 swap slot i with slot
        ``i + below(population - i)``.
        """
        if not 0 <= k <= population:
            raise ValueError("sample size out of range")
        pool = list(range(population))
        for i in range(k):
            j = i + self.below(population - i)
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:k]
