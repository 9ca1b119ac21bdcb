"""Prime field arithmetic and the seeded random source."""

from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003


class DivisionByZero(ZeroDivisionError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def inv(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise DivisionByZero("inverse of 0 in F_%d" % p)
    return pow(a, p - 2, p)


def arith(a: int, b: int, op: str, p: int = DEFAULT_PRIME) -> int:
    """Exact modular arithmetic; `op` is one of add, sub, mul, div."""
    if op == "add":
        return (a + b) % p
    if op == "sub":
        return (a - b) % p
    if op == "mul":
        return (a * b) % p
    if op == "div":
        return (a * inv(b, p)) % p
    raise ValueError("unknown op %r" % op)


def check_modulus(p: int) -> None:
    if p <= 2 or not is_prime(p):
        raise ValueError("field modulus must be an odd prime, got %d" % p)


class Rng:
    """Seeded random source threaded through every probabilistic operation.

    Child generators are derived from ``(seed, index)`` so independent
    trials can be replayed one at a time.
    """

    def __init__(self, seed: int = 0):
        self.seed = int(seed) & 0xFFFFFFFFFFFFFFFF
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(self.seed)))

    def element(self, p: int, nonzero: bool = False) -> int:
        if nonzero:
            return int(self._gen.integers(1, p))
        return int(self._gen.integers(0, p))

    def elements(self, p: int, k: int) -> list[int]:
        return [int(v) for v in self._gen.integers(0, p, size=k)]

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return int(self._gen.integers(lo, hi + 1))

    def choice(self, seq):
        return seq[int(self._gen.integers(0, len(seq)))]

    def shuffle(self, seq: list) -> list:
        out = list(seq)
        perm = self._gen.permutation(len(out))
        return [out[i] for i in perm]

    def child_seed(self, index: int) -> int:
        ss = np.random.SeedSequence([self.seed, int(index)])
        return int(ss.generate_state(1, np.uint64)[0])

    def child(self, index: int) -> "Rng":
        return Rng(self.child_seed(index))

    def fork(self) -> "Rng":
        """Fresh independent generator drawn from this stream."""
        return Rng(int(self._gen.integers(0, 2**63)))


def random_element(rng: Rng, p: int = DEFAULT_PRIME, nonzero: bool = False) -> int:
    return rng.element(p, nonzero)
