# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; interface identical to ``_pykernels``.

Keys must fit in a signed 64-bit word and p must be below 2^31, so that a
product of two residues fits without overflow.
"""

from cython.operator cimport dereference as deref
from libc.stdint cimport int64_t, uint64_t
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector

import numpy as np
cimport numpy as cnp

cnp.import_array()

BACKEND = "cython"

ctypedef pair[int64_t, int64_t] term_t


cdef inline int64_t _inv(int64_t a, int64_t p):
    cdef int64_t r = 1, e = p - 2
    a %= p
    while e:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


cdef class Reducer:
    cdef public int64_t p
    cdef int shift
    cdef uint64_t guard
    cdef bint elim
    cdef vector[int64_t] leads
    cdef vector[uint64_t] masks
    cdef vector[vector[term_t]] tails

    def __init__(self, p, shift, guard, elim):
        self.p = p
        self.shift = shift
        self.guard = guard
        self.elim = elim

    cdef inline uint64_t _mask(self, int64_t key):
        cdef int shift = self.shift
        cdef int64_t et = 0, deg
        if self.elim:
            et = key >> (shift + 8)
            key &= ((<int64_t>1) << (shift + 8)) - 1
        deg = (key + ((<int64_t>1) << shift) - 1) >> shift
        return <uint64_t>(((deg << shift) - key) | (et << shift))

    def __len__(self):
        return self.leads.size()

    def add(self, dict terms):
        cdef int64_t lead = max(terms)
        cdef vector[term_t] tail
        items = sorted(((k, c) for k, c in terms.items() if k != lead), reverse=True)
        for k, c in items:
            tail.push_back(term_t(k, c))
        self.leads.push_back(lead)
        self.masks.push_back(self._mask(lead))
        self.tails.push_back(tail)

    cdef inline int _find(self, int64_t key):
        cdef uint64_t g = self.guard
        cdef uint64_t word = self._mask(key) | g
        cdef size_t i
        for i in range(self.masks.size()):
            if ((word - self.masks[i]) & g) == g:
                return <int>i
        return -1

    def find(self, key):
        return self._find(key)

    def reduce(self, dict terms, bint full=True):
        cdef unordered_map[int64_t, int64_t] f
        cdef unordered_map[int64_t, int64_t].iterator it
        cdef priority_queue[int64_t] heap
        cdef vector[term_t] rem
        cdef int64_t p = self.p, k, c, sh, nk, v, tc
        cdef int idx
        cdef size_t j
        cdef vector[term_t]* tail
        for key, coef in terms.items():
            c = coef % p
            if c:
                f[key] = c
                heap.push(key)
        while not heap.empty():
            k = heap.top()
            heap.pop()
            it = f.find(k)
            if it == f.end():
                continue
            c = deref(it).second
            f.erase(it)
            idx = self._find(k)
            if idx < 0:
                rem.push_back(term_t(k, c))
                if not full:
                    out = {t.first: t.second for t in rem}
                    for kv in f:
                        out[kv.first] = kv.second
                    return out
                continue
            sh = k - self.leads[idx]
            tail = &self.tails[idx]
            for j in range(tail.size()):
                nk = tail[0][j].first + sh
                tc = c * tail[0][j].second % p
                it = f.find(nk)
                if it == f.end():
                    f[nk] = (p - tc) % p
                    heap.push(nk)
                else:
                    v = (deref(it).second - tc + p) % p
                    if v:
                        f[nk] = v
                    else:
                        f.erase(it)
        return {t.first: t.second for t in rem}


def mul_terms(dict a, dict b, int64_t p):
    """Product of two term dicts with 64-bit keys."""
    cdef vector[term_t] va, vb
    cdef unordered_map[int64_t, int64_t] acc
    cdef size_t i, j
    cdef int64_t k, c1
    for k1, v1 in a.items():
        va.push_back(term_t(k1, v1))
    for k2, v2 in b.items():
        vb.push_back(term_t(k2, v2))
    for i in range(va.size()):
        c1 = va[i].second
        for j in range(vb.size()):
            k = va[i].first + vb[j].first
            acc[k] = (acc[k] + c1 * vb[j].second) % p
    return {kv.first: kv.second for kv in acc if kv.second}


cdef int _echelon(int64_t[:, ::1] m, int64_t p, list pivots, bint reduced):
    cdef Py_ssize_t rows = m.shape[0], cols = m.shape[1]
    cdef Py_ssize_t r = 0, c, i, piv, q
    cdef int64_t t, f, iv
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for q in range(c, cols):
                t = m[r, q]
                m[r, q] = m[piv, q]
                m[piv, q] = t
        iv = _inv(m[r, c], p)
        if reduced:
            for q in range(c, cols):
                m[r, q] = m[r, q] * iv % p
            iv = 1
        for i in range(0 if reduced else r + 1, rows):
            if i == r or not m[i, c]:
                continue
            f = m[i, c] * iv % p
            for q in range(c, cols):
                if m[r, q]:
                    m[i, q] = (m[i, q] - f * m[r, q]) % p
                    if m[i, q] < 0:
                        m[i, q] += p
        if pivots is not None:
            pivots.append(c)
        r += 1
    return r


def rref_mod_p(a, int64_t p):
    """Reduced row echelon form over F_p; returns (matrix, pivot columns)."""
    m = np.ascontiguousarray(np.array(a, dtype=np.int64) % p)
    pivots = []
    if m.size == 0:
        return m[:0], pivots
    r = _echelon(m, p, pivots, True)
    return m[:r], pivots


def rank_mod_p(a, int64_t p):
    a = np.asarray(a)
    if a.size == 0:
        return 0
    m = np.array(a, dtype=np.int64) % p
    if m.shape[0] > m.shape[1]:
        m = m.T
    m = np.ascontiguousarray(m)
    return _echelon(m, p, None, False)
