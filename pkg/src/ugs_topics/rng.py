"""Deterministic 64-bit PRNG used everywhere randomness is needed.

The generator is xoshiro256** with SplitMix64 seeding, chosen because both
algorithms are tiny, public domain, and specified bit-exactly, so any
reimplementation can reproduce our streams from the seed alone.

Bit-exact definition
--------------------
State: four unsigned 64-bit words ``s0..s3``.

Seeding from a 64-bit integer ``seed`` (taken modulo 2**64): run SplitMix64
four times and assign its outputs to ``s0, s1, s2, s3`` in order.

SplitMix64 step (all arithmetic modulo 2**64)::

    x += 0x9E3779B97F4A7C15
    z = x
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    output = z ^ (z >> 31)

xoshiro256** next() (``rotl(x, k)`` is a 64-bit left rotation)::

    result = rotl(s1 * 5, 7) * 9
    t  = s1 << 17
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = rotl(s3, 45)

Derived values:

* uniform double in [0, 1): ``(next() >> 11) * 2.0**-53``
* integer in [0, n):        ``int(next_double() * n)``, clamped to n - 1

The Gibbs sampling kernel (:mod:`ugs_topics.gibbs`) carries the same state
as a ``uint64[4]`` array and consumes the stream in a documented order; a
test asserts the two implementations produce identical streams.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state once; returns (new_state, output)."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def seed_state(seed: int) -> list[int]:
    """Expand a 64-bit seed into the four xoshiro256** state words."""
    sm = seed & _MASK64
    words = []
    for _ in range(4):
        sm, out = splitmix64(sm)
        words.append(out)
    return words


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & _MASK64


class Xoshiro256StarStar:
    """Pure-Python reference implementation of the documented generator."""

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._s = seed_state(seed)

    def next_uint64(self) -> int:
        s0, s1, s2, s3 = self._s
        result = (_rotl((s1 * 5) & _MASK64, 7) * 9) & _MASK64
        t = (s1 << 17) & _MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s = [s0, s1, s2, s3]
        return result

    def next_double(self) -> float:
        """Uniform double in [0, 1) with 53 random bits."""
        return (self.next_uint64() >> 11) * 2.0 ** -53

    def next_below(self, n: int) -> int:
        """Integer in [0, n), from a single double draw."""
        i = int(self.next_double() * n)
        return n - 1 if i >= n else i

    def state_words(self) -> tuple[int, int, int, int]:
        return tuple(self._s)


def derive_seed(base_seed: int, index: int) -> int:
    """Seed for the index-th independent stream (grid cells etc.)."""
    return (base_seed + index) & _MASK64
