"""Monomial ideals: minimal generators, Hilbert series, stability."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .poly import Monomial, exponents_of_degree

Exps = tuple[int, ...]


class UnitMonomial(ValueError):
    pass


def m_index(u: Monomial | Sequence[int]) -> int:
    """Largest (1-based) index j with x_j dividing u."""
    e = u.exponents if isinstance(u, Monomial) else tuple(u)
    for j in range(len(e) - 1, -1, -1):
        if e[j]:
            return j + 1
    raise UnitMonomial("m_index of the unit monomial")


def _divides(a: Exps, b: Exps) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def minimalize(gens: Iterable[Exps]) -> tuple[Exps, ...]:
    """Drop generators divisible by others; sorted by degree then grevlex-descending."""
    uniq = sorted(set(tuple(g) for g in gens), key=lambda e: (sum(e),) + tuple(-x for x in reversed(e)))
    out: list[Exps] = []
    for g in uniq:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    out.sort(key=lambda e: (sum(e),) + tuple(x for x in reversed(e)))
    return tuple(out)


class MonomialIdeal:
    """Monomial ideal of K[x_1..x_n] given by its minimal generators."""

    def __init__(self, n: int, gens: Iterable[Sequence[int] | Monomial] = ()):
        self.n = n
        raw = []
        for g in gens:
            e = g.exponents if isinstance(g, Monomial) else tuple(int(x) for x in g)
            if len(e) != n:
                raise ValueError("generator %r has wrong length for n=%d" % (e, n))
            raw.append(e)
        self.gens: tuple[Exps, ...] = minimalize(raw)

    # -- basic ----------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and self.n == other.n and self.gens == other.gens

    def __hash__(self):
        return hash((self.n, self.gens))

    def __repr__(self):
        return "MonomialIdeal(%d, %r)" % (self.n, list(self.gens))

    def __len__(self):
        return len(self.gens)

    def monomials(self) -> list[Monomial]:
        return [Monomial(g) for g in self.gens]

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(sum(g) == 0 for g in self.gens)

    def contains(self, u: Sequence[int] | Monomial) -> bool:
        e = u.exponents if isinstance(u, Monomial) else tuple(u)
        return any(_divides(g, e) for g in self.gens)

    __contains__ = contains

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)

    def min_degree(self) -> int:
        return min((sum(g) for g in self.gens), default=0)

    def degree_profile(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for g in self.gens:
            out[sum(g)] = out.get(sum(g), 0) + 1
        return out

    # -- operations -----------------------------------------------------
    def add(self, other: "MonomialIdeal") -> "MonomialIdeal":
        return MonomialIdeal(self.n, self.gens + other.gens)

    def colon_var(self, i: int) -> "MonomialIdeal":
        """M : x_i (0-based i)."""
        out = []
        for g in self.gens:
            if g[i]:
                g = g[:i] + (g[i] - 1,) + g[i + 1:]
            out.append(g)
        return MonomialIdeal(self.n, out)

    def colon_monomial(self, u: Sequence[int]) -> "MonomialIdeal":
        return MonomialIdeal(self.n, [tuple(max(a - b, 0) for a, b in zip(g, u)) for g in self.gens])

    def drop_last(self) -> "MonomialIdeal":
        """Image in K[x_1..x_{n-1}] under x_n -> 0."""
        return MonomialIdeal(self.n - 1, [g[:-1] for g in self.gens if g[-1] == 0])

    def extend(self, k: int = 1) -> "MonomialIdeal":
        return MonomialIdeal(self.n + k, [g + (0,) * k for g in self.gens])

    def times_maximal(self) -> "MonomialIdeal":
        out = []
        for g in self.gens:
            for i in range(self.n):
                out.append(g[:i] + (g[i] + 1,) + g[i + 1:])
        return MonomialIdeal(self.n, out)

    def truncate(self, d: int) -> "MonomialIdeal":
        """Ideal generated by the degree-d monomials of M."""
        return MonomialIdeal(self.n, [e for e in exponents_of_degree(self.n, d) if self.contains(e)])

    # -- Hilbert --------------------------------------------------------
    def std_monomial_count(self, d: int) -> int:
        """Number of degree-d monomials outside M."""
        if d < 0:
            return 0
        return sum(1 for e in exponents_of_degree(self.n, d) if not self.contains(e))

    def standard_monomials(self, d: int) -> list[Exps]:
        return [e for e in exponents_of_degree(self.n, d) if not self.contains(e)]

    def hilbert_numerator(self) -> list[int]:
        """h(t) with HS(R/M) = h(t)/(1-t)^n, as a coefficient list."""
        return list(_numerator(self.n, self.gens))

    def hilbert_value(self, d: int) -> int:
        return series_coefficient(self.hilbert_numerator(), self.n, d)

    def dimension(self) -> int:
        """Krull dimension of R/M (-1 for the unit ideal)."""
        if self.is_unit():
            return -1
        h = self.hilbert_numerator()
        k = 0
        while True:
            q, r = divide_one_minus_t(h)
            if any(r):
                break
            h = q
            k += 1
        return self.n - k

    # -- stability ------------------------------------------------------
    def is_stable(self) -> bool:
        """Exchange condition x_i u / x_m(u) in M, checked on minimal generators."""
        for u in self.gens:
            if sum(u) == 0:
                continue
            m = m_index(u) - 1
            for i in range(m):
                v = list(u)
                v[m] -= 1
                v[i] += 1
                if not self.contains(v):
                    return False
        return True

    def is_stable_exhaustive(self, max_degree: int) -> bool:
        """Exchange condition on every monomial of M up to ``max_degree``."""
        for d in range(max_degree + 1):
            for u in exponents_of_degree(self.n, d):
                if d == 0 or not self.contains(u):
                    continue
                m = m_index(u) - 1
                for i in range(m):
                    v = list(u)
                    v[m] -= 1
                    v[i] += 1
                    if not self.contains(v):
                        return False
        return True


@lru_cache(maxsize=65536)
def _numerator(n: int, gens: tuple[Exps, ...]) -> tuple[int, ...]:
    if not gens:
        return (1,)
    if any(sum(g) == 0 for g in gens):
        return (0,)
    counts = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    if max(counts) <= 1:
        # pairwise coprime generators
        out = [1]
        for g in gens:
            out = poly_mul(out, [1] + [0] * (sum(g) - 1) + [-1])
        return tuple(out)
    best = max(range(n), key=lambda i: (counts[i], -i))
    unit = tuple(int(j == best) for j in range(n))
    plus = minimalize([g for g in gens if g[best] == 0] + [unit])
    colon = minimalize([g[:best] + (max(g[best] - 1, 0),) + g[best + 1:] for g in gens])
    a = _numerator(n, plus)
    b = _numerator(n, colon)
    return tuple(poly_add(list(a), [0] + list(b)))


# -- integer polynomials in t (coefficient lists, lowest degree first) --

def trim(a: list[int]) -> list[int]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [0]


def poly_add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, x in enumerate(b):
        out[i] += x
    return trim(out)


def poly_sub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return poly_add(a, [-x for x in b])


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divide_one_minus_t(a: Sequence[int]) -> tuple[list[int], list[int]]:
    """Quotient and remainder of a(t) by (1 - t)."""
    a = trim(list(a))
    if a == [0]:
        return [0], [0]
    # a(t) = (1 - t) q(t) + r with q_k = sum_{i<=k} a_i
    q = []
    s = 0
    for x in a[:-1]:
        s += x
        q.append(s)
    r = s + a[-1]
    return trim(q) if q else [0], [r]


def divide_by_one_minus_t_power(a: Sequence[int], k: int) -> list[int] | None:
    """a / (1-t)^k if exact, else None."""
    q = trim(list(a))
    for _ in range(k):
        q, r = divide_one_minus_t(q)
        if r[0]:
            return None
    return q


def series_coefficient(h: Sequence[int], n: int, d: int) -> int:
    """Coefficient of t^d in h(t)/(1-t)^n."""
    if d < 0:
        return 0
    if n == 0:
        return h[d] if d < len(h) else 0
    return sum(c * comb(d - i + n - 1, n - 1) for i, c in enumerate(h) if i <= d)


def series_expansion(h: Sequence[int], n: int, upto: int) -> list[int]:
    return [series_coefficient(h, n, d) for d in range(upto + 1)]


def evaluate_at_one(a: Sequence[int]) -> int:
    return sum(a)


def binomial(a: int, b: int) -> int:
    if b < 0 or a < 0 or b > a:
        return 0
    return comb(a, b)
