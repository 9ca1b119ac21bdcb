"""Graded ideals and the operations built on Groebner bases: products with
the maximal ideal, colon ideals, reduction modulo a linear form, minimal
generator counts, Hilbert functions, colon lengths, component ideals,
type, dimension and height.

Lengths that may be infinite are returned as ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .groebner import GroebnerBasis, buchberger, make_reducer, normal_form
from .monomial import (MonomialIdeal, divide_by_one_minus_t_power, poly_sub,
                       series_coefficient, trim)
from .poly import (LinearChange, LinearForm, Polynomial, PolyRing, apply_linear_change,
                   change_sending_to_last, exponents_of_degree, substitute_last_variable)

INFINITE = math.inf


class NonHomogeneousGenerator(ValueError):
    pass


class ZeroDivisorPolynomial(ValueError):
    """Colon by the zero polynomial."""


class UnitIdeal(ValueError):
    pass


class Ideal:
    """Homogeneous ideal with lazily computed reduced Groebner basis."""

    def __init__(self, ring: PolyRing, gens: Iterable[Polynomial] = (), *,
                 gb: GroebnerBasis | None = None, check: bool = True):
        self.ring = ring
        gens = [g for g in gens if g.terms]
        if check:
            for g in gens:
                if g.ring != ring:
                    raise ValueError("generator from a different ring")
                if not g.is_homogeneous():
                    raise NonHomogeneousGenerator("generator %s is not homogeneous" % g)
        self.gens: tuple[Polynomial, ...] = tuple(gens)
        self._gb = gb

    @classmethod
    def from_gb(cls, G: GroebnerBasis) -> "Ideal":
        return cls(G.ring, G.elements, gb=G, check=False)

    @classmethod
    def unit(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def maximal(cls, ring: PolyRing) -> "Ideal":
        return cls(ring, ring.gens())

    @classmethod
    def power_of_maximal(cls, ring: PolyRing, d: int) -> "Ideal":
        return cls(ring, [ring.monomial(e) for e in exponents_of_degree(ring.n, d)])

    @classmethod
    def from_monomial_ideal(cls, ring: PolyRing, M: MonomialIdeal) -> "Ideal":
        return cls(ring, [ring.monomial(g) for g in M.gens])

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(str(g) for g in self.gens)

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.gens, ring=self.ring)
        return self._gb

    @cached_property
    def lead(self) -> MonomialIdeal:
        return self.gb.lead_ideal()

    @cached_property
    def numerator(self) -> list[int]:
        return self.lead.hilbert_numerator()

    @property
    def n(self) -> int:
        return self.ring.n

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def contains(self, f: Polynomial) -> bool:
        return self.gb.contains(f)

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def equals(self, other: "Ideal") -> bool:
        """Equality by mutual membership of generators."""
        return self.issubset(other) and other.issubset(self)

    def generator_degrees(self) -> list[int]:
        return sorted(g.degree() for g in self.gens)

    def max_generator_degree(self) -> int:
        return max(self.generator_degrees(), default=0)

    def transform(self, change: LinearChange) -> "Ideal":
        return Ideal(self.ring, [apply_linear_change(g, change) for g in self.gens], check=False)


# ---------------------------------------------------------------------------

def m_times(I: Ideal) -> Ideal:
    """The product m*I, generated by x_i * g."""
    ring = I.ring
    if I.is_zero():
        return Ideal(ring, [])
    src = I.gb.elements if I._gb is not None else I.gens
    return Ideal(ring, [g.shift(ring.var_key(i)) for g in src for i in range(ring.n)], check=False)


def divide_exact(h: Polynomial, f: Polynomial) -> Polynomial:
    """Quotient q with h = q*f; raises if f does not divide h."""
    ring = h.ring
    p = ring.p
    lf = f.lead_key()
    ilc = pow(f.terms[lf], p - 2, p)
    rem = dict(h.terms)
    q: dict[int, int] = {}
    while rem:
        k = max(rem)
        if not ring.divides(lf, k):
            raise ValueError("not an exact division")
        s = k - lf
        c = rem[k] * ilc % p
        q[s] = c
        for fk, fc in f.terms.items():
            kk = fk + s
            v = (rem.get(kk, 0) - c * fc) % p
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return Polynomial(ring, q)


def _eliminate(ring: PolyRing, tgens: Sequence[Polynomial], ugens: Sequence[Polynomial]) -> list[Polynomial]:
    """(t*A + (1-t)*B) intersected with R, i.e. the generators of A cap B."""
    from .poly import embed
    E = ring.with_elimination_variable()
    t = E.gen(E.n - 1)
    one_minus_t = E.one() - t
    gens = [embed(a, E) * t for a in tgens] + [embed(b, E) * one_minus_t for b in ugens]
    G = buchberger(gens, ring=E)
    out = []
    base = E.base()
    for g in G.elements:
        if all(E.unpack(k)[-1] == 0 for k in g.terms):
            out.append(Polynomial(ring, {ring.pack(E.unpack(k)[:-1]): c for k, c in g.terms.items()}))
    assert base == ring
    return out


def intersect(I: Ideal, J: Ideal) -> Ideal:
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    return Ideal(ring, _eliminate(ring, I.gb.elements, J.gb.elements), check=False)


def colon_last_variable(G: GroebnerBasis) -> GroebnerBasis:
    """Reduced grevlex basis of I : x_n from a reduced grevlex basis of I."""
    ring = G.ring
    if ring.elim:
        raise ValueError("needs a grevlex basis")
    xn = ring.var_key(ring.n - 1)
    out = []
    for g in G.elements:
        if all(ring.divides(xn, k) for k in g.terms):
            g = Polynomial(ring, {k - xn: c for k, c in g.terms.items()})
        out.append(g)
    return _reduce_basis(ring, out)


def _reduce_basis(ring: PolyRing, elems: list[Polynomial]) -> GroebnerBasis:
    """Reduce a (non-reduced) Groebner basis."""
    elems = sorted(elems, key=lambda f: f.lead_key())
    minimal: list[Polynomial] = []
    for g in elems:
        lg = g.lead_key()
        if not any(ring.divides(h.lead_key(), lg) for h in minimal):
            minimal.append(g.monic())
    if any(g.lead_key() == 0 for g in minimal):
        return GroebnerBasis(ring, [ring.one()])
    red = make_reducer(ring)
    for g in minimal:
        red.add(g.terms)
    out = []
    for g in minimal:
        lead = g.lead_key()
        tail = {k: c for k, c in g.terms.items() if k != lead}
        r = red.reduce(tail) if tail else {}
        r[lead] = 1
        out.append(Polynomial(ring, r))
    return GroebnerBasis(ring, out)


def _linear_form_of(f: Polynomial) -> LinearForm | None:
    ring = f.ring
    if not f.terms or ring.elim:
        return None
    coeffs = [0] * ring.n
    for k, c in f.terms.items():
        e = ring.unpack(k)
        if sum(e) != 1:
            return None
        coeffs[e.index(1)] = c
    return LinearForm(ring, tuple(coeffs))


def colon_linear(I: Ideal, z: LinearForm) -> tuple[Ideal, LinearChange, GroebnerBasis, GroebnerBasis]:
    """I : z through coordinates in which z is the last variable.

    Returns the colon in original coordinates together with the change
    phi (phi(z) = x_n) and the reduced bases of phi(I) and phi(I) : x_n.
    """
    phi = change_sending_to_last(z)
    J = I if phi.is_identity() else I.transform(phi)
    GJ = J.gb
    GC = colon_last_variable(GJ)
    if phi.is_identity():
        return Ideal.from_gb(GC), phi, GJ, GC
    back = phi.inverse()
    C = Ideal(I.ring, [apply_linear_change(g, back) for g in GC.elements], check=False)
    return C, phi, GJ, GC


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """I : f = {g : f g in I}."""
    if not f.terms:
        raise ZeroDivisorPolynomial("colon by the zero polynomial")
    if not f.is_homogeneous():
        raise NonHomogeneousGenerator("colon needs a homogeneous polynomial")
    ring = I.ring
    if I.contains(f):
        return Ideal.unit(ring)
    z = _linear_form_of(f)
    if z is not None:
        return colon_linear(I, z)[0]
    if I.is_zero():
        return Ideal(ring, [])
    inter = _eliminate(ring, I.gb.elements, [f])
    return Ideal(ring, [divide_exact(h, f) for h in inter], check=False)


def colon_general(I: Ideal, f: Polynomial) -> Ideal:
    """I : f by intersection-and-divide, without the linear fast path."""
    if not f.terms:
        raise ZeroDivisorPolynomial("colon by the zero polynomial")
    ring = I.ring
    if I.contains(f):
        return Ideal.unit(ring)
    if I.is_zero():
        return Ideal(ring, [])
    inter = _eliminate(ring, I.gb.elements, [f])
    return Ideal(ring, [divide_exact(h, f) for h in inter], check=False)


def colon_m(I: Ideal) -> Ideal:
    """I : m as the intersection of the I : x_i."""
    ring = I.ring
    if I.is_unit():
        return I
    if ring.n == 0:
        return Ideal.unit(ring)
    parts = [colon(I, ring.gen(i)) for i in range(ring.n)]
    acc = parts[0]
    for P in parts[1:]:
        acc = intersect(acc, P)
    return acc


def reduce_mod_linear(I: Ideal, z: LinearForm) -> Ideal:
    """Image of I in R/zR = K[x_1..x_{n-1}]."""
    target = I.ring.drop_last()
    return Ideal(target, [substitute_last_variable(g, z) for g in I.gens], check=False)


# ---------------------------------------------------------------------------
# Hilbert functions and lengths

@dataclass
class HilbertFunction:
    """Hilb(R/I, d) for d <= up_to, with the numerator of the series.

    Values past ``stable_from`` follow the Hilbert polynomial.
    """

    n: int
    numerator: list[int]
    values: list[int]
    stable_from: int = field(init=False)

    def __post_init__(self):
        self.stable_from = max(len(trim(self.numerator)) - self.n, 0)

    def __getitem__(self, d: int) -> int:
        if 0 <= d < len(self.values):
            return self.values[d]
        return series_coefficient(self.numerator, self.n, d)


def hilbert(I: Ideal, up_to: int) -> HilbertFunction:
    L = I.lead
    return HilbertFunction(I.n, I.numerator, [L.std_monomial_count(d) for d in range(up_to + 1)])


def length_between(num_small: Sequence[int], num_big: Sequence[int], n: int) -> float | int:
    """Length of J/I from the series numerators of R/I (``num_small`` side
    is the smaller ideal) and R/J; ``inf`` if the difference is not a polynomial."""
    q = divide_by_one_minus_t_power(poly_sub(num_small, num_big), n)
    if q is None:
        return INFINITE
    return sum(q)


def graded_length(num_small: Sequence[int], num_big: Sequence[int], n: int) -> list[int] | None:
    """Degreewise dimensions of J/I, or None if infinite."""
    return divide_by_one_minus_t_power(poly_sub(num_small, num_big), n)


@dataclass
class Mu:
    total: int
    profile: dict[int, int]


def mu(I: Ideal) -> Mu:
    """Minimal number of generators, as the length of I/mI degree by degree."""
    if I.is_zero():
        return Mu(0, {})
    if I.is_unit():
        return Mu(1, {0: 1})
    mI = m_times(I)
    q = graded_length(mI.numerator, I.numerator, I.n)
    assert q is not None, "I/mI must have finite length"
    profile = {d: c for d, c in enumerate(q) if c}
    return Mu(sum(q), profile)


def colon_length(I: Ideal, z: LinearForm) -> float | int:
    """l((I:z)/I), or inf."""
    _, _, GJ, GC = colon_linear(I, z)
    n = I.n
    return length_between(GJ.lead_ideal().hilbert_numerator(),
                          GC.lead_ideal().hilbert_numerator(), n)


def colon_graded_length(I: Ideal, z: LinearForm) -> list[int] | None:
    _, _, GJ, GC = colon_linear(I, z)
    return graded_length(GJ.lead_ideal().hilbert_numerator(),
                         GC.lead_ideal().hilbert_numerator(), I.n)


def component_ideal(I: Ideal, j: int) -> Ideal:
    """I_<j>: the ideal generated by the degree-j piece of I."""
    ring = I.ring
    if j < 0:
        raise ValueError("degree must be non-negative")
    basis = degree_basis(I, j)
    return Ideal(ring, basis, check=False)


def degree_basis(I: Ideal, j: int) -> list[Polynomial]:
    """Row-reduced basis of the vector space I_j."""
    ring = I.ring
    if I.is_zero():
        return []
    G = I.gb
    monos = list(exponents_of_degree(ring.n, j))
    keys = [ring.pack(e) for e in monos]
    col = {k: i for i, k in enumerate(keys)}
    leads = [(g.lead_key(), g) for g in G.elements]
    rows = []
    for k in keys:
        for lk, g in leads:
            if ring.divides(lk, k):
                rows.append(g.shift(k - lk))
                break
    if not rows:
        return []
    mat = np.zeros((len(rows), len(keys)), dtype=np.int64)
    for r, f in enumerate(rows):
        for k, c in f.terms.items():
            mat[r, col[k]] = c
    red, piv = kernels.rref_mod_p(mat, ring.p)
    out = []
    for r in range(len(piv)):
        row = red[r]
        out.append(Polynomial(ring, {keys[c]: int(row[c]) for c in np.nonzero(row)[0]}))
    return out


def type_of(I: Ideal) -> float | int:
    """l((I:m)/I)."""
    if I.is_unit():
        return 0
    C = colon_m(I)
    return length_between(I.numerator, C.numerator, I.n)


def socle_dimension(I: Ideal, degrees: Iterable[int]) -> int:
    """dim of ((I:m)/I)_d summed over the given degrees, by linear algebra
    on standard monomials: the common kernel of multiplication by each x_i."""
    ring = I.ring
    L = I.lead
    G = I.gb
    total = 0
    for d in degrees:
        std = L.standard_monomials(d)
        if not std:
            continue
        nxt = L.standard_monomials(d + 1)
        col = {ring.pack(e): i for i, e in enumerate(nxt)}
        blocks = []
        for i in range(ring.n):
            xi = ring.var_key(i)
            mat = np.zeros((len(std), len(nxt)), dtype=np.int64)
            for r, e in enumerate(std):
                nf = normal_form(Polynomial(ring, {ring.pack(e) + xi: 1}), G)
                for k, c in nf.terms.items():
                    mat[r, col[k]] = c
            blocks.append(mat)
        big = np.concatenate(blocks, axis=1) if blocks else np.zeros((len(std), 0), dtype=np.int64)
        rank = kernels.rank_mod_p(big, ring.p) if big.size else 0
        total += len(std) - rank
    return total


def dim_and_height(I: Ideal) -> tuple[int, int]:
    if I.is_unit():
        raise UnitIdeal("dimension of R/R is undefined")
    d = I.lead.dimension()
    return d, I.n - d


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return Ideal(I.ring, list(I.gens) + list(J.gens), check=False)
