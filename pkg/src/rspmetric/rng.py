"""Deterministic, splittable random number generation.

All randomness in the library flows through this module so that every result
is reproducible bit for bit across runs, platforms, and degrees of
parallelism.  The core is the splitmix64 finalizer used as a counter-based
generator: the i-th raw value of a stream is a pure function of (key, i), so
streams can be split into independent children and addressed at any counter
without shared state.

Uniform variates are the midpoints ``(r + 0.5) * 2**-53`` of the 53-bit grid,
which keeps them inside the open interval (0, 1).  Exponential variates use
the inverse transform ``-log(1 - u)``; because u is never exactly 0 or 1 the
draws are strictly positive and finite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15  # splitmix64 counter increment
_U53 = 2.0**-53


def _mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit integer."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def _mix64_np(z: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer (uint64 arithmetic wraps mod 2^64)."""
    z = z ^ (z >> np.uint64(30))
    z = z * np.uint64(0xBF58476D1CE4E5B9)
    z = z ^ (z >> np.uint64(27))
    z = z * np.uint64(0x94D049BB133111EB)
    return z ^ (z >> np.uint64(31))


def _label_hash(label: str) -> int:
    """FNV-1a hash of a purpose label, folded to 64 bits."""
    h = 0xCBF29CE484222325
    for b in label.encode("utf-8"):
        h = ((h ^ b) * 0x100000001B3) & _MASK64
    return h


@dataclass(frozen=True)
class Seed:
    """A 64-bit master seed with deterministic stream splitting.

    ``child(index, label)`` derives an independent child seed; identical
    (master, index, label) always yields the identical child, so parallel
    trials can derive their own streams without coordination.
    """

    master: int

    def __post_init__(self) -> None:
        if not isinstance(self.master, int) or not 0 <= self.master <= _MASK64:
            raise ValueError("master seed must be a 64-bit unsigned integer")

    def child(self, index: int, label: str = "") -> "Seed":
        if index < 0:
            raise ValueError("child index must be nonnegative")
        keyed = _mix64(self.master ^ _label_hash(label))
        return Seed(_mix64((keyed + (index + 1) * _GAMMA) & _MASK64))

    def hex(self) -> str:
        return f"{self.master:016x}"


class UniformStream:
    """Sequential view over the counter-addressed uniforms of a :class:`Seed`.

    ``u01()`` and ``u01_block(k)`` consume counters in order; the value at
    counter i is ``(mix64(key + (i+1)*GAMMA) >> 11 + 0.5) * 2**-53`` and does
    not depend on how preceding values were consumed (scalar or block).
    """

    def __init__(self, seed: Seed):
        self._key = seed.master
        self._counter = 0

    def _raw(self, counter: int) -> int:
        return _mix64((self._key + (counter + 1) * _GAMMA) & _MASK64)

    def u01(self) -> float:
        u = ((self._raw(self._counter) >> 11) + 0.5) * _U53
        self._counter += 1
        return u

    def u01_block(self, count: int) -> np.ndarray:
        if count < 0:
            raise ValueError("count must be nonnegative")
        counters = np.arange(self._counter + 1, self._counter + count + 1, dtype=np.uint64)
        raw = _mix64_np(np.uint64(self._key) + counters * np.uint64(_GAMMA))
        self._counter += count
        return ((raw >> np.uint64(11)).astype(np.float64) + 0.5) * _U53

    def exponential(self) -> float:
        return float(-np.log1p(-self.u01()))

    def exponential_block(self, count: int) -> np.ndarray:
        return -np.log1p(-self.u01_block(count))

    def integer_below(self, bound: int) -> int:
        """Uniform integer in [0, bound); bound must be positive."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        return min(int(self.u01() * bound), bound - 1)
