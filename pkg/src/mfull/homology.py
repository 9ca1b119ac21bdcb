"""Graded Betti numbers of R/I from Koszul homology, the Eliahou-Kervaire
formula for stable ideals, regularity and the homological profile."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .field import Rng
from .gin import DEFAULT_TRIALS, gin
from .groebner import normal_form
from .ideal_ops import Ideal, mu
from .monomial import MonomialIdeal, binomial, m_index
from .poly import Polynomial


class NotStable(ValueError):
    pass


class NotEquigenerated(ValueError):
    pass


class DegreeCapExceeded(RuntimeError):
    pass


@dataclass
class BettiTable:
    """beta_{i,j}(R/I) keyed by (homological index, internal degree)."""

    entries: dict[tuple[int, int], int] = field(default_factory=dict)
    max_i: int = 0
    max_j: int = 0
    complete: bool = False

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.entries.get(ij, 0)

    def nonzero(self) -> list[tuple[int, int, int]]:
        return [(i, j, v) for (i, j), v in sorted(self.entries.items()) if v]

    def ideal_betti(self) -> dict[tuple[int, int], int]:
        """beta_{i,j}(I) = beta_{i+1,j}(R/I)."""
        return {(i - 1, j): v for (i, j), v in self.entries.items() if i >= 1 and v}

    def projective_dimension(self) -> int:
        return max((i for (i, _), v in self.entries.items() if v), default=0)

    def regularity(self) -> int:
        """max{j - i : beta_{i,j}(R/I) != 0, i >= 1} + 1, the ideal's regularity."""
        return max((j - i for (i, j), v in self.entries.items() if v and i >= 1), default=-1) + 1

    def last_rank(self) -> int:
        pd = self.projective_dimension()
        return sum(v for (i, _), v in self.entries.items() if i == pd)

    def alternating_numerator(self) -> list[int]:
        """sum (-1)^i beta_{i,j} t^j."""
        out = [0] * (self.max_j + 1)
        for (i, j), v in self.entries.items():
            out[j] += (-1) ** i * v
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out

    def format(self) -> str:
        if not self.entries:
            return "(empty)"
        pd = self.projective_dimension()
        rows = sorted({j - i for (i, j), v in self.entries.items() if v})
        width = max(len(str(v)) for v in self.entries.values()) + 1
        lines = ["     " + "".join(str(i).rjust(width) for i in range(pd + 1))]
        for r in rows:
            cells = []
            for i in range(pd + 1):
                v = self.entries.get((i, i + r), 0)
                cells.append((str(v) if v else ".").rjust(width))
            lines.append(("%d:" % r).rjust(5) + "".join(cells))
        return "\n".join(lines)


class _Quotient:
    """Graded pieces of R/I with multiplication maps, built from the GB."""

    def __init__(self, I: Ideal):
        self.I = I
        self.ring = I.ring
        self.lead = I.lead
        self._basis: dict[int, list[int]] = {}
        self._mult: dict[tuple[int, int], np.ndarray] = {}

    def basis(self, d: int) -> list[int]:
        if d not in self._basis:
            if d < 0:
                self._basis[d] = []
            else:
                ring = self.ring
                self._basis[d] = [ring.pack(e) for e in self.lead.standard_monomials(d)]
        return self._basis[d]

    def mult(self, var: int, d: int) -> np.ndarray:
        """Matrix of x_var : (R/I)_d -> (R/I)_{d+1}, rows indexed by the source."""
        key = (var, d)
        if key not in self._mult:
            src = self.basis(d)
            dst = self.basis(d + 1)
            col = {k: i for i, k in enumerate(dst)}
            ring = self.ring
            xk = ring.var_key(var)
            G = self.I.gb
            mat = np.zeros((len(src), len(dst)), dtype=np.int64)
            for r, k in enumerate(src):
                kk = k + xk
                if kk in col:
                    mat[r, col[kk]] = 1
                    continue
                nf = normal_form(Polynomial(ring, {kk: 1}), G)
                for k2, c in nf.terms.items():
                    mat[r, col[k2]] = c
            self._mult[key] = mat
        return self._mult[key]


def _koszul_matrix(Q: _Quotient, i: int, j: int) -> tuple[np.ndarray, int, int]:
    """d_i : Lambda^i V (x) (R/I)_{j-i} -> Lambda^{i-1} V (x) (R/I)_{j-i+1}.

    Returns (matrix with source rows, source dim, target dim).
    """
    n = Q.ring.n
    d = j - i
    src_subsets = list(combinations(range(n), i))
    src_basis = Q.basis(d)
    src_dim = len(src_subsets) * len(src_basis)
    if i == 0:
        return np.zeros((src_dim, 0), dtype=np.int64), src_dim, 0
    tgt_subsets = list(combinations(range(n), i - 1))
    tgt_basis = Q.basis(d + 1)
    tgt_dim = len(tgt_subsets) * len(tgt_basis)
    mat = np.zeros((src_dim, tgt_dim), dtype=np.int64)
    if src_dim == 0 or tgt_dim == 0:
        return mat, src_dim, tgt_dim
    tindex = {s: a for a, s in enumerate(tgt_subsets)}
    nb, nt = len(src_basis), len(tgt_basis)
    p = Q.ring.p
    for a, S in enumerate(src_subsets):
        for pos, var in enumerate(S):
            T = S[:pos] + S[pos + 1:]
            b = tindex[T]
            block = Q.mult(var, d)
            sign = 1 if pos % 2 == 0 else p - 1
            mat[a * nb:(a + 1) * nb, b * nt:(b + 1) * nt] = block * sign % p
    return mat, src_dim, tgt_dim


def koszul_betti(I: Ideal, max_i: int | None = None, max_j: int | None = None,
                 regularity_hint: int | None = None) -> BettiTable:
    """beta_{i,j}(R/I) = dim H_i(x; R/I)_j for i <= max_i, j <= max_j."""
    n = I.n
    if max_i is None:
        max_i = n
    if max_i > n:
        raise ValueError("homological index exceeds the number of variables")
    if max_j is None:
        max_j = 2 * I.max_generator_degree() + n
    Q = _Quotient(I)
    p = I.ring.p
    ranks: dict[tuple[int, int], int] = {}
    dims: dict[tuple[int, int], int] = {}

    def rank(i: int, j: int) -> int:
        if (i, j) not in ranks:
            if i <= 0 or i > n:
                ranks[(i, j)] = 0
                dims[(i, j)] = binomial(n, i) * len(Q.basis(j - i)) if 0 <= i <= n else 0
            else:
                mat, sd, _ = _koszul_matrix(Q, i, j)
                dims[(i, j)] = sd
                ranks[(i, j)] = kernels.rank_mod_p(mat, p) if mat.size else 0
        return ranks[(i, j)]

    entries: dict[tuple[int, int], int] = {}
    for i in range(0, max_i + 1):
        for j in range(i, max_j + 1):
            r_out = rank(i, j)
            r_in = rank(i + 1, j) if i + 1 <= n else 0
            dim = dims[(i, j)]
            b = dim - r_out - r_in
            if b:
                entries[(i, j)] = b
    table = BettiTable(entries, max_i, max_j)
    reg = regularity_hint
    if reg is None:
        reg = table.regularity()
    table.complete = max_i >= n and max_j >= max_i + reg
    return table


def ek_betti(M: MonomialIdeal) -> BettiTable:
    """Betti numbers of R/M for a stable monomial ideal M (Eliahou-Kervaire)."""
    if not M.is_stable():
        raise NotStable("Eliahou-Kervaire needs a stable ideal")
    n = M.n
    entries: dict[tuple[int, int], int] = {}
    if not M.is_unit():
        entries[(0, 0)] = 1
    else:
        return BettiTable({}, n, 0, True)
    max_j = 0
    for u in M.gens:
        d = sum(u)
        m = m_index(u)
        for i in range(m):
            c = binomial(m - 1, i)
            if c:
                key = (i + 1, d + i)
                entries[key] = entries.get(key, 0) + c
                max_j = max(max_j, d + i)
    return BettiTable(entries, n, max_j, True)


def regularity(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS) -> int:
    """Castelnuovo-Mumford regularity of I.

    Read off a stable gin as its maximal generator degree; otherwise taken
    from a Koszul sweep whose degree bound grows until the table is
    certified complete.
    """
    if I.is_zero() or I.is_unit():
        raise ValueError("regularity needs a proper nonzero ideal")
    G = gin(I, rng, trials).gin
    if G.is_stable():
        return G.max_degree()
    return _regularity_by_sweep(I)


def _regularity_by_sweep(I: Ideal, cap: int = 64) -> int:
    n = I.n
    bound = 2 * I.max_generator_degree() + n
    while bound <= cap:
        t = koszul_betti(I, n, bound)
        reg = t.regularity()
        if bound >= n + reg:
            return reg
        bound = n + reg + 1
    raise DegreeCapExceeded("regularity sweep exceeded degree %d" % cap)


def has_linear_resolution(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS) -> bool:
    """Whether I, generated in a single degree d, has regularity d."""
    prof = mu(I).profile
    if len(prof) != 1:
        raise NotEquigenerated("generators span degrees %s" % sorted(prof))
    (d,) = prof
    return regularity(I, rng, trials) == d


def is_linear_by_betti(I: Ideal) -> bool:
    """beta_{i,j}(I) = 0 unless j = d + i, from a complete Koszul table."""
    prof = mu(I).profile
    if len(prof) != 1:
        raise NotEquigenerated("generators span degrees %s" % sorted(prof))
    (d,) = prof
    reg = _regularity_by_sweep(I)
    return reg == d


@dataclass
class HomologicalProfile:
    projective_dimension: int
    depth: int
    cohen_macaulay: bool
    gorenstein: bool
    betti: BettiTable


def homological_profile(I: Ideal, dim: int | None = None) -> HomologicalProfile:
    """(pd, depth, Cohen-Macaulay, Gorenstein) of R/I from a certified Betti table."""
    if I.is_unit():
        raise ValueError("profile of R/R is undefined")
    n = I.n
    reg = _regularity_by_sweep(I) if not I.is_zero() else 0
    table = koszul_betti(I, n, n + reg, regularity_hint=reg)
    pd = table.projective_dimension()
    depth = n - pd
    if dim is None:
        dim = I.lead.dimension()
    cm = depth == dim
    gor = cm and table.last_rank() == 1
    return HomologicalProfile(pd, depth, cm, gor, table)
