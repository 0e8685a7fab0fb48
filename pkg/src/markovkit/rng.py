"""Seedable SplitMix64 random source.

SplitMix64 is counter based: the i-th output is a fixed mixing function of
``seed + i * GAMMA``.  That makes bulk generation with numpy produce exactly
the same stream as repeated scalar calls, and makes traces portable to any
language that implements the same three-line mixer.
"""

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_TWO_M53 = 2.0 ** -53


def _mix(z):
    z = ((z ^ (z >> 30)) * _M1) & _MASK
    z = ((z ^ (z >> 27)) * _M2) & _MASK
    return z ^ (z >> 31)


class RandomSource:
    """Deterministic 64-bit generator; the only source of randomness in the package.

    Unit draws are ``(out >> 11) * 2**-53``, so they lie in [0, 1) with 53
    bits of precision and each consumes exactly one 64-bit output.
    ``draws`` counts how many outputs have been consumed so far.

    A single instance is not thread safe; give each thread its own source
    (see :meth:`spawn`).
    """

    def __init__(self, seed=42):
        self.seed = int(seed) & _MASK
        self._state = self.seed
        self.draws = 0

    def __repr__(self):
        return f"RandomSource(seed={self.seed}, draws={self.draws})"

    def next_u64(self):
        self._state = (self._state + GAMMA) & _MASK
        self.draws += 1
        return _mix(self._state)

    def uniform(self):
        return (self.next_u64() >> 11) * _TWO_M53

    def randbelow(self, n):
        """Uniform integer in ``range(n)`` from a single unit draw."""
        return min(int(self.uniform() * n), n - 1)

    def u64s(self, size):
        """The next ``size`` raw outputs as a uint64 array."""
        k = np.arange(1, size + 1, dtype=np.uint64)
        with np.errstate(over="ignore"):
            z = np.uint64(self._state) + k * np.uint64(GAMMA)
            z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
            z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
            z = z ^ (z >> np.uint64(31))
        self._state = (self._state + size * GAMMA) & _MASK
        self.draws += size
        return z

    def uniforms(self, size):
        """The next ``size`` unit draws; identical to calling :meth:`uniform` repeatedly."""
        return (self.u64s(size) >> np.uint64(11)).astype(np.float64) * _TWO_M53

    def spawn(self, count):
        """Child sources with seeds taken from the next ``count`` outputs."""
        return [RandomSource(int(s)) for s in self.u64s(count)]


def as_source(rng):
    """Accept a RandomSource, an integer seed, or None (seed 42)."""
    if isinstance(rng, RandomSource):
        return rng
    return RandomSource(42 if rng is None else rng)
