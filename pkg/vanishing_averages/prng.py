"""
splitmix64 pseudo random generator

State transition (all arithmetic modulo 2**64):

    state = state + 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

Every seeded construction and every sampled oracle run draws from this
generator so results can be reproduced outside of Python.
"""

from __future__ import annotations

from typing import List, MutableSequence, TypeVar

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

T = TypeVar("T")


class SplitMix64:
    """
    Deterministic 64-bit generator
    """

    def __init__(self, seed: int) -> None:
        self.state = seed & MASK64

    def next_u64(self) -> int:
        """
        Advance the state and return the next 64-bit output

        >>> SplitMix64(0).next_u64()
        16294208416658607535
        """
        self.state = (self.state + GOLDEN_GAMMA) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, low: int, high: int) -> int:
        """
        Integer in [low, high] by reduction of one output modulo the range size
        """
        return low + self.next_u64() % (high - low + 1)

    def integers(self, count: int, low: int, high: int) -> List[int]:
        return [self.randint(low, high) for _ in range(count)]

    def shuffle(self, items: MutableSequence[T]) -> None:
        """
        In-place Fisher-Yates shuffle, walking from the last position down
        """
        for position in range(len(items) - 1, 0, -1):
            other = self.next_u64() % (position + 1)
            items[position], items[other] = items[other], items[position]
