"""Self-contained deterministic random source.

The generator is SplitMix64 (Steele, Lea & Flood's 64-bit mixer, the same
sequence specified for java.util.SplittableRandom), chosen so that networks
generated from a seed are byte-identical across platforms and Python
versions. Distribution transforms are pinned here too: uniforms take the top
53 bits, Gaussians use Box-Muller with the spare cached, Poisson counts use
Knuth's product-of-uniforms method.
"""

from __future__ import annotations

import math
from typing import Optional

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """SplitMix64 stream seeded with a 64-bit integer (negatives wrap)."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64
        self._spare: Optional[float] = None

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform in [0, 1) with 53-bit resolution."""
        return (self.next_u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def gauss(self) -> float:
        """Standard normal via Box-Muller; the sine mate is cached."""
        if self._spare is not None:
            z = self._spare
            self._spare = None
            return z
        u1 = self.uniform()
        while u1 == 0.0:
            u1 = self.uniform()
        u2 = self.uniform()
        r = math.sqrt(-2.0 * math.log(u1))
        self._spare = r * math.sin(2.0 * math.pi * u2)
        return r * math.cos(2.0 * math.pi * u2)

    def poisson(self, mean: float) -> int:
        """Poisson count via Knuth's method; fine for means below ~700
        (the exp(-mean) floor), which covers every generator default."""
        if mean <= 0.0:
            raise ValueError("poisson mean must be positive")
        threshold = math.exp(-mean)
        k = 0
        p = 1.0
        while True:
            p *= self.uniform()
            if p <= threshold:
                return k
            k += 1
