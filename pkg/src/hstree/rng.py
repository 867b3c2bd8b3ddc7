"""Seeded 64-bit generator used for every random choice in the package.

The update rule is splitmix64.  Draws without replacement use a partial
Fisher-Yates shuffle over a virtual ``range(m)``, so the sequence of values
is a documented function of the seed that any language can reproduce.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def _mix(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(parent: int, tag: int) -> int:
    """Child seed for stream ``tag`` of ``parent`` (trial index, tree side, ...)."""
    return _mix((parent + GOLDEN * (tag + 1)) & MASK64)


class SplitMix64:
    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + GOLDEN) & MASK64
        return _mix(self.state)

    def below(self, m: int) -> int:
        """Uniform integer in ``[0, m)``; rejection removes modulo bias."""
        if m <= 0:
            raise ValueError("m must be positive")
        if m == 1:
            return 0
        limit = (1 << 64) - ((1 << 64) % m)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % m

    def random(self) -> float:
        """Uniform double in ``[0, 1)`` built from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def bits(self, nbits: int) -> int:
        """Uniform integer in ``[0, 2**nbits)`` assembled from 64-bit words."""
        out = 0
        got = 0
        while got < nbits:
            out = (out << 64) | self.next_u64()
            got += 64
        return out >> (got - nbits)

    def sample(self, m: int, k: int) -> list[int]:
        """Draw ``k`` distinct values from ``range(m)`` in draw order.

        Partial Fisher-Yates on a virtual array: step ``i`` swaps slot ``i``
        with a uniform slot in ``[i, m)`` and emits the value landing in
        slot ``i``.
        """
        if not 0 <= k <= m:
            raise ValueError(f"cannot draw {k} of {m}")
        swapped: dict[int, int] = {}
        out = []
        for i in range(k):
            j = i + self.below(m - i)
            vi = swapped.get(i, i)
            vj = swapped.get(j, j)
            swapped[j] = vi
            out.append(vj)
        return out
