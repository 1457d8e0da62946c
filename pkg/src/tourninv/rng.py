"""Seeded 64-bit generator (splitmix64) and the helpers built on it.

Streams are reproducible for a given seed within this package. Nothing here
promises bit-equality with other splitmix implementations beyond the core
mixing constants.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Sub-seed for a (seed, key, ...) tuple; used for per-part / per-item streams."""
    s = mix64(seed)
    for k in keys:
        s = mix64(s ^ mix64((k + 1) * GOLDEN))
    return s


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n) by rejection (no modulo bias)."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def shuffle(self, items: list) -> None:
        # Fisher-Yates, last index downwards
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]

    def permutation(self, n: int) -> list[int]:
        p = list(range(n))
        self.shuffle(p)
        return p


def random_bits(count: int, seed: int) -> np.ndarray:
    """`count` fair bits from the splitmix64 stream started at `seed`.

    Bit t is the top bit of the (t+1)-th output, so this agrees with calling
    ``SplitMix64(seed).next_u64() >> 63`` repeatedly, but is vectorized.
    """
    if count == 0:
        return np.zeros(0, dtype=np.uint8)
    with np.errstate(over="ignore"):
        z = np.arange(1, count + 1, dtype=np.uint64) * np.uint64(GOLDEN)
        z += np.uint64(seed & MASK64)
        z = (z ^ (z >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(63)).astype(np.uint8)
