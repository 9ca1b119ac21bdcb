"""Reduced Groebner bases by Buchberger's algorithm.

Pairs are processed by the normal selection strategy (smallest lcm first)
and pruned with Buchberger's two criteria in the Gebauer-Moeller
formulation.  Term reduction runs in the kernel ``Reducer``.
"""

from __future__ import annotations

import heapq
from typing import Iterable, Sequence

from . import kernels
from .monomial import MonomialIdeal, UnitMonomial, m_index  # noqa: F401  (re-exported)
from .poly import Polynomial, PolyRing

def make_reducer(ring: PolyRing):
    """Kernel reducer for ``ring``; the compiled one needs 64-bit keys."""
    args = (ring.p, ring._shift, ring._guard, ring.elim)
    if ring._word_keys:
        return kernels.Reducer(*args)
    from ._pykernels import Reducer
    return Reducer(*args)


class GroebnerBasis:
    """Reduced Groebner basis; elements are monic and sorted by lead term."""

    def __init__(self, ring: PolyRing, elements: Sequence[Polynomial]):
        self.ring = ring
        self.elements = tuple(sorted(elements, key=lambda f: f.lead_key()))
        self.order = "elim" if ring.elim else "grevlex"
        self._reducer = None

    @property
    def reducer(self):
        if self._reducer is None:
            r = make_reducer(self.ring)
            for g in self.elements:
                r.add(g.terms)
            self._reducer = r
        return self._reducer

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (isinstance(other, GroebnerBasis) and self.ring == other.ring
                and self.elements == other.elements)

    def __repr__(self):
        return "GroebnerBasis([%s])" % ", ".join(str(g) for g in self.elements)

    def is_unit(self) -> bool:
        return any(g.lead_key() == 0 for g in self.elements)

    def is_zero(self) -> bool:
        return not self.elements

    def lead_keys(self) -> list[int]:
        return [g.lead_key() for g in self.elements]

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return not normal_form(f, self).terms

    def lead_ideal(self) -> MonomialIdeal:
        return lead_ideal(self)

    def max_degree(self) -> int:
        kd = self.ring.key_degree
        return max((kd(g.lead_key()) for g in self.elements), default=0)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if f.ring != G.ring:
        raise ValueError("polynomial and basis live in different rings")
    if not f.terms or not G.elements:
        return f
    return Polynomial(f.ring, G.reducer.reduce(f.terms))


def lead_ideal(G: GroebnerBasis) -> MonomialIdeal:
    ring = G.ring
    return MonomialIdeal(ring.n, [ring.unpack(g.lead_key()) for g in G.elements])


def _monic_terms(terms: dict[int, int], p: int) -> dict[int, int]:
    lead = max(terms)
    c = terms[lead]
    if c == 1:
        return terms
    iv = pow(c, p - 2, p)
    return {k: v * iv % p for k, v in terms.items()}


def buchberger(gens: Iterable[Polynomial], ring: PolyRing | None = None,
               stats: dict | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if g.terms]
    if ring is None:
        if not gens:
            raise ValueError("ring required for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators from different rings")
    if not gens:
        return GroebnerBasis(ring, [])
    p = ring.p
    divides = ring.divides
    lcm = ring.lcm

    polys: list[dict[int, int]] = []   # every basis element ever added
    leads: list[int] = []
    basis: list[int] = []              # indices currently in G
    pairs: list[tuple[int, int, int, int]] = []   # heap of (lcm, seq, i, j)
    seq = 0
    reducer = make_reducer(ring)
    n_reductions = 0
    n_zero = 0

    def coprime(a: int, b: int) -> bool:
        return lcm(a, b) == a + b

    def update(h: int) -> None:
        nonlocal pairs, basis, seq
        lh = leads[h]
        cand = [(g, lcm(lh, leads[g])) for g in basis]
        kept = []
        for idx, (g, l) in enumerate(cand):
            if coprime(lh, leads[g]):
                kept.append((g, l))
                continue
            others = cand[idx + 1:] + kept
            if not any(divides(l2, l) for _, l2 in others):
                kept.append((g, l))
        new_pairs = [(l, g) for g, l in kept if not coprime(lh, leads[g])]
        survivors = []
        for item in pairs:
            l, _, i, j = item
            if (divides(lh, l) and lcm(leads[i], lh) != l and lcm(leads[j], lh) != l):
                continue
            survivors.append(item)
        for l, g in new_pairs:
            survivors.append((l, seq, g, h))
            seq += 1
        heapq.heapify(survivors)
        pairs = survivors
        basis = [g for g in basis if not divides(lh, leads[g])] + [h]

    def add(terms: dict[int, int]) -> None:
        terms = _monic_terms(terms, p)
        polys.append(terms)
        leads.append(max(terms))
        reducer.add(terms)
        update(len(polys) - 1)

    for g in sorted(gens, key=lambda f: f.lead_key()):
        h = reducer.reduce(g.terms) if len(reducer) else dict(g.terms)
        if h:
            if max(h) == 0:
                return GroebnerBasis(ring, [ring.one()])
            add(h)

    while pairs:
        l, _, i, j = heapq.heappop(pairs)
        fi, fj = polys[i], polys[j]
        si = l - leads[i]
        sj = l - leads[j]
        s: dict[int, int] = {}
        for k, c in fi.items():
            if k != leads[i]:
                s[k + si] = c
        for k, c in fj.items():
            if k != leads[j]:
                kk = k + sj
                v = (s.get(kk, 0) - c) % p
                if v:
                    s[kk] = v
                else:
                    s.pop(kk, None)
        n_reductions += 1
        if not s:
            n_zero += 1
            continue
        h = reducer.reduce(s)
        if not h:
            n_zero += 1
            continue
        if max(h) == 0:
            return GroebnerBasis(ring, [ring.one()])
        add(h)

    # inter-reduce the minimal basis
    final = make_reducer(ring)
    for g in basis:
        final.add(polys[g])
    out = []
    for g in basis:
        f = polys[g]
        lead = leads[g]
        tail = {k: c for k, c in f.items() if k != lead}
        red = final.reduce(tail) if tail else {}
        red[lead] = 1
        out.append(Polynomial(ring, red))
    if stats is not None:
        stats["pairs_reduced"] = n_reductions
        stats["zero_reductions"] = n_zero
        stats["basis_size"] = len(out)
    return GroebnerBasis(ring, out)


def is_groebner_basis(G: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    els = G.elements
    ring = G.ring
    for a in range(len(els)):
        for b in range(a + 1, len(els)):
            la, lb = els[a].lead_key(), els[b].lead_key()
            l = ring.lcm(la, lb)
            s = els[a].shift(l - la) - els[b].shift(l - lb)
            if normal_form(s, G).terms:
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    ring = G.ring
    leads = [g.lead_key() for g in G.elements]
    if len(set(leads)) != len(leads):
        return False
    for g in G.elements:
        if g.lead_coeff() != 1:
            return False
        for k in g.terms:
            for j, l in enumerate(leads):
                if l != g.lead_key() and ring.divides(l, k):
                    return False
    return True
