"""Pure-Python hot kernels.

Same interface as the compiled ``_ckernels`` extension; ``mfull.kernels``
picks one at import time.
"""

from __future__ import annotations

from heapq import heapify, heappop, heappush

import numpy as np

BACKEND = "python"


class Reducer:
    """Monic reducers indexed by lead monomial, for normal forms.

    Polynomials cross this boundary as ``{key: coeff}`` dicts whose keys
    are packed monomials; ``shift``, ``guard`` and ``elim_shift`` describe
    the packing so the exponent word of a key can be recovered.
    """

    def __init__(self, p: int, shift: int, guard: int, elim: bool):
        self.p = p
        self.shift = shift
        self.guard = guard
        self.elim = elim
        self.leads: list[int] = []
        self.masks: list[int] = []
        self.tails: list[list[tuple[int, int]]] = []

    def _mask(self, key: int) -> int:
        shift = self.shift
        if self.elim:
            et = key >> (shift + 8)
            key &= (1 << (shift + 8)) - 1
            deg = -((-key) >> shift)
            return ((deg << shift) - key) | (et << shift)
        deg = -((-key) >> shift)
        return (deg << shift) - key

    def __len__(self):
        return len(self.leads)

    def add(self, terms: dict[int, int]) -> None:
        """Add a monic polynomial."""
        lead = max(terms)
        self.leads.append(lead)
        self.masks.append(self._mask(lead))
        self.tails.append(sorted(((k, c) for k, c in terms.items() if k != lead), reverse=True))

    def find(self, key: int) -> int:
        g = self.guard
        word = self._mask(key) | g
        for i, m in enumerate(self.masks):
            if (word - m) & g == g:
                return i
        return -1

    def reduce(self, terms: dict[int, int], full: bool = True) -> dict[int, int]:
        """Normal form of ``terms``; with ``full=False`` stop at the first
        irreducible lead term (top reduction only)."""
        p = self.p
        g = self.guard
        masks = self.masks
        leads = self.leads
        tails = self.tails
        mask_of = self._mask
        f = dict(terms)
        heap = [-k for k in f]
        heapify(heap)
        rem: dict[int, int] = {}
        while heap:
            k = -heappop(heap)
            c = f.pop(k, 0)
            if not c:
                continue
            word = mask_of(k) | g
            idx = -1
            for i in range(len(masks)):
                if (word - masks[i]) & g == g:
                    idx = i
                    break
            if idx < 0:
                rem[k] = c
                if not full:
                    for kk in f:
                        rem[kk] = f[kk]
                    return rem
                continue
            shift = k - leads[idx]
            for tk, tc in tails[idx]:
                nk = tk + shift
                old = f.get(nk)
                if old is None:
                    f[nk] = (-c * tc) % p
                    heappush(heap, -nk)
                else:
                    v = (old - c * tc) % p
                    if v:
                        f[nk] = v
                    else:
                        del f[nk]
        return rem


def mul_terms(a: dict[int, int], b: dict[int, int], p: int) -> dict[int, int]:
    """Product of two term dicts."""
    acc: dict[int, int] = {}
    get = acc.get
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 + k2
            acc[k] = get(k, 0) + c1 * c2
    return {k: v % p for k, v in acc.items() if v % p}


def rref_mod_p(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), p - 2, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_mod_p(a: np.ndarray, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    m = np.array(a, dtype=np.int64) % p
    rows, cols = m.shape
    if rows > cols:
        m = m.T.copy()
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        below = m[r + 1:, c]
        nzr = np.nonzero(below)[0]
        if nzr.size:
            f = below[nzr] * pow(int(m[r, c]), p - 2, p) % p
            m[r + 1 + nzr] = (m[r + 1 + nzr] - np.outer(f, m[r])) % p
        r += 1
    return r
