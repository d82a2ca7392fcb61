#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Tunable Wavelet Units - Reproducible Random Numbers
ตัวสร้างเลขสุ่มแบบ xorshift64* ที่ให้ผลเหมือนกันทุก platform

Constants:
- xorshift shifts 12, 25, 27 with output multiplier 0x2545F4914F6CDD1D
- the 64-bit seed is expanded once through splitmix64 so that small seeds
  (0, 1, 42, ...) still start from a well mixed nonzero state
"""

from typing import List

import numpy as np

MASK64 = 0xFFFFFFFFFFFFFFFF
MULTIPLIER = 0x2545F4914F6CDD1D
DEFAULT_SEED = 42


def splitmix64(seed: int) -> int:
    z = (seed + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class Xorshift64Star:
    """xorshift64* generator; never enters the all-zero state."""

    def __init__(self, seed: int = DEFAULT_SEED):
        self.seed = int(seed) & MASK64
        self.state = splitmix64(self.seed) or 0x9E3779B97F4A7C15

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * MULTIPLIER) & MASK64

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits"""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def uniform(self, low: float = 0.0, high: float = 1.0) -> float:
        return low + (high - low) * self.random()

    def uniform_list(self, count: int, low: float = 0.0, high: float = 1.0) -> List[float]:
        return [self.uniform(low, high) for _ in range(count)]

    def uniform_array(self, shape, low: float = -1.0, high: float = 1.0) -> np.ndarray:
        size = int(np.prod(shape))
        return np.array(self.uniform_list(size, low, high), dtype=np.float64).reshape(shape)
