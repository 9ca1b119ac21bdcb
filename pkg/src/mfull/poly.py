"""Monomials, graded reverse lex order, sparse polynomials over F_p, and
linear changes of coordinates.

Monomials are stored inside polynomials as packed integer *keys*.  For the
grevlex ring on variables x_1 > ... > x_n the key is

    key(e) = deg(e) * 2**(W*n) - sum_i e_i * 2**(W*(i-1))

which is additive (key(a*b) = key(a) + key(b)) and increasing in grevlex,
so term order comparisons and monomial products are plain integer ops.
Each exponent occupies a W-bit field whose top bit is kept clear, which
gives a branch-free divisibility test on the packed exponent word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import kernels
from .field import DEFAULT_PRIME, DivisionByZero, Rng, check_modulus, inv

W = 8
MAX_EXP = (1 << (W - 1)) - 1


class BadPivot(ValueError):
    """The linear form has no usable coefficient on the last variable."""


class SingularMatrix(ValueError):
    pass


class ExponentOverflow(OverflowError):
    pass


class PolyRing:
    """K[x_1, ..., x_n] over F_p, ordered by grevlex.

    With ``elim=True`` one extra trailing variable is appended and the order
    becomes the block order that compares its exponent first and breaks ties
    by grevlex on the remaining variables.  Such rings only appear inside
    intersection computations.
    """

    def __init__(self, n: int, p: int = DEFAULT_PRIME, names: Sequence[str] | None = None,
                 elim: bool = False):
        if n < 0:
            raise ValueError("variable count must be non-negative")
        check_modulus(p)
        self.p = p
        self.elim = elim
        self.nx = n  # variables ordered by grevlex
        self.n = n + 1 if elim else n
        if names is None:
            names = default_names(n)
            if elim:
                names = list(names) + ["_t"]
        names = [str(s) for s in names]
        if len(names) != self.n:
            raise ValueError("expected %d variable names, got %d" % (self.n, len(names)))
        if len(set(names)) != len(names):
            raise ValueError("variable names must be pairwise distinct")
        self.names = tuple(names)
        self._shift = W * self.nx
        self._guard = sum(1 << (W * i + W - 1) for i in range(self.n))
        self._field_mask = (1 << W) - 1
        # compiled kernels take 64-bit keys and residues below 2^31
        self._word_keys = self._shift + W * (2 if elim else 1) <= 63 and p < (1 << 31)

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, PolyRing) and self.p == other.p and self.n == other.n
                and self.elim == other.elim and self.names == other.names)

    def __hash__(self):
        return hash((self.p, self.n, self.elim, self.names))

    def __repr__(self):
        return "PolyRing(F%d[%s]%s)" % (self.p, ", ".join(self.names), ", elim" if self.elim else "")

    # -- packing --------------------------------------------------------
    def pack(self, exps: Sequence[int]) -> int:
        if len(exps) != self.n:
            raise ValueError("exponent vector of length %d in a ring with %d variables"
                             % (len(exps), self.n))
        nx = self.nx
        deg = 0
        packed = 0
        for i in range(nx):
            e = exps[i]
            if e < 0:
                raise ValueError("negative exponent")
            if e > MAX_EXP:
                raise ExponentOverflow("exponent %d exceeds %d" % (e, MAX_EXP))
            deg += e
            packed |= e << (W * i)
        if deg > MAX_EXP:
            raise ExponentOverflow("degree %d exceeds %d" % (deg, MAX_EXP))
        key = (deg << self._shift) - packed
        if self.elim:
            et = exps[nx]
            if et > MAX_EXP:
                raise ExponentOverflow("exponent %d exceeds %d" % (et, MAX_EXP))
            key += et << (self._shift + W)
        return key

    def divmask(self, key: int) -> int:
        """Exponent word (one W-bit field per variable) of a packed key."""
        shift = self._shift
        if self.elim:
            et = key >> (shift + W)
            key &= (1 << (shift + W)) - 1
            deg = -((-key) >> shift)
            return ((deg << shift) - key) | (et << shift)
        deg = -((-key) >> shift)
        return (deg << shift) - key

    def unpack(self, key: int) -> tuple[int, ...]:
        return tuple(self.divmask(key).to_bytes(self.n, "little"))

    def _key_of_word(self, word: int) -> int:
        shift = self._shift
        low = word & ((1 << shift) - 1)
        deg = sum(low.to_bytes(self.nx, "little"))
        if deg > MAX_EXP:
            raise ExponentOverflow("degree %d exceeds %d" % (deg, MAX_EXP))
        key = (deg << shift) - low
        if self.elim:
            key += (word >> shift) << (shift + W)
        return key

    def key_degree(self, key: int) -> int:
        """Total degree in the grevlex variables."""
        if self.elim:
            key &= (1 << (self._shift + W)) - 1
        return -((-key) >> self._shift)

    def divides(self, a: int, b: int) -> bool:
        """Whether monomial key ``a`` divides monomial key ``b``."""
        g = self._guard
        return ((self.divmask(b) | g) - self.divmask(a)) & g == g

    def lcm(self, a: int, b: int) -> int:
        wa, wb = self.divmask(a), self.divmask(b)
        g = self._guard
        # per-field max: the guard bit survives where a's field >= b's
        sel = ((((wa | g) - wb) & g) >> (W - 1)) * self._field_mask
        return self._key_of_word((wa & sel) | (wb & ~sel))

    def var_key(self, i: int) -> int:
        e = [0] * self.n
        e[i] = 1
        return self.pack(e)

    # -- construction ---------------------------------------------------
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {0: 1})

    def const(self, c: int) -> "Polynomial":
        c %= self.p
        return Polynomial(self, {0: c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        return Polynomial(self, {self.var_key(i): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.n)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        c = coeff % self.p
        return Polynomial(self, {self.pack(exps): c} if c else {})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], int]]) -> "Polynomial":
        d: dict[int, int] = {}
        p = self.p
        for exps, c in terms:
            k = self.pack(exps)
            d[k] = (d.get(k, 0) + c) % p
        return Polynomial(self, {k: c for k, c in d.items() if c})

    def drop_last(self) -> "PolyRing":
        if self.elim:
            raise ValueError("cannot drop a variable from an elimination ring")
        if self.n == 0:
            raise ValueError("ring has no variables")
        return PolyRing(self.n - 1, self.p, self.names[:-1])

    def with_elimination_variable(self) -> "PolyRing":
        return PolyRing(self.n, self.p, list(self.names) + ["_t"], elim=True)

    def base(self) -> "PolyRing":
        """The grevlex ring underlying an elimination ring."""
        if not self.elim:
            return self
        return PolyRing(self.nx, self.p, self.names[:-1])

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(self, text)

    def monomials_of_degree(self, d: int) -> list[tuple[int, ...]]:
        return list(exponents_of_degree(self.nx, d))


def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return ["x%d" % (i + 1) for i in range(n)]


def exponents_of_degree(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of length n and total degree d, grevlex-descending."""
    out = list(_compositions(n, d))
    return iter(sorted(out, key=_grevlex_sort_key, reverse=True))


def _compositions(n: int, d: int):
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in _compositions(n - 1, d - first):
            yield (first,) + rest


def _grevlex_sort_key(e: Sequence[int]):
    return (sum(e),) + tuple(-x for x in reversed(e))


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if any(e < 0 for e in self.exponents):
            raise ValueError("negative exponent")

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def n(self) -> int:
        return len(self.exponents)

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        if not other.divides(self):
            raise ValueError("%s does not divide %s" % (other, self))
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def lcm(self, other: "Monomial") -> "Monomial":
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def format(self, names: Sequence[str]) -> str:
        parts = []
        for name, e in zip(names, self.exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append("%s^%d" % (name, e))
        return "*".join(parts) if parts else "1"

    def __str__(self):
        return self.format(default_names(self.n))


def grevlex_cmp(a: Monomial, b: Monomial) -> int:
    """-1, 0 or 1 as a is less than, equal to or greater than b in grevlex."""
    if len(a.exponents) != len(b.exponents):
        raise ValueError("monomials from different rings")
    da, db = a.degree, b.degree
    if da != db:
        return 1 if da > db else -1
    for x, y in zip(reversed(a.exponents), reversed(b.exponents)):
        if x != y:
            return 1 if x < y else -1
    return 0


class Polynomial:
    """Sparse polynomial: a dict from packed monomial keys to nonzero residues."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict[int, int]):
        self.ring = ring
        self.terms = terms

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def lead_key(self) -> int:
        return max(self.terms)

    def lead_coeff(self) -> int:
        return self.terms[max(self.terms)]

    def lead_monomial(self) -> Monomial:
        return Monomial(self.ring.unpack(max(self.terms)))

    def sorted_keys(self) -> list[int]:
        return sorted(self.terms, reverse=True)

    def items(self) -> Iterator[tuple[Monomial, int]]:
        """Terms in descending grevlex order."""
        for k in self.sorted_keys():
            yield Monomial(self.ring.unpack(k)), self.terms[k]

    def degrees(self) -> set[int]:
        kd = self.ring.key_degree
        return {kd(k) for k in self.terms}

    def degree(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return max(self.degrees())

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def coefficient(self, exps: Sequence[int]) -> int:
        return self.terms.get(self.ring.pack(exps), 0)

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "Polynomial"):
        if other.ring != self.ring:
            raise ValueError("polynomials from different rings")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        self._check(other)
        p = self.ring.p
        d = dict(self.terms)
        for k, c in other.terms.items():
            v = (d.get(k, 0) + c) % p
            if v:
                d[k] = v
            else:
                d.pop(k, None)
        return Polynomial(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {k: p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {k: v * c % p for k, v in self.terms.items()})

    def shift(self, key: int, c: int = 1) -> "Polynomial":
        """Multiply by the monomial with packed key ``key`` and scalar ``c``."""
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {k + key: v * c % p for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        ring = self.ring
        if ring._word_keys:
            return Polynomial(ring, kernels.mul_terms(self.terms, other.terms, ring.p))
        from ._pykernels import mul_terms
        return Polynomial(ring, mul_terms(self.terms, other.terms, ring.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(inv(self.lead_coeff(), self.ring.p))

    # -- comparison & printing -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return "Polynomial(%s)" % format_polynomial(self)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    p = f.ring.p
    names = f.ring.names
    out = []
    for mono, c in f.items():
        neg = c > p // 2
        a = p - c if neg else c
        body = mono.format(names)
        if body == "1":
            text = str(a)
        elif a == 1:
            text = body
        else:
            text = "%d*%s" % (a, body)
        if not out:
            out.append("-" + text if neg else text)
        else:
            out.append(("- " if neg else "+ ") + text)
    return " ".join(out)


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, column: int | None = None):
        super().__init__(message)
        self.column = column


class UnknownVariable(PolynomialSyntaxError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\^)|(\*)|(\+)|(-)|(\S))")


def parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    """Parse a sum of terms like ``3*x^2*y - y^3 + 2`` (``*`` optional)."""
    index = {name: i for i, name in enumerate(ring.names)}
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        kind = m.lastindex
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial", 1)
    p = ring.p
    acc: dict[int, int] = {}
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] in (5, 6):
            sign = -1 if tokens[i][0] == 6 else 1
            i += 1
        elif not first:
            raise PolynomialSyntaxError("expected '+' or '-'", tokens[i][2])
        first = False
        coeff = 1
        exps = [0] * ring.n
        factors = 0
        while i < len(tokens) and tokens[i][0] in (1, 2, 4):
            kind, val, col = tokens[i]
            if kind == 4:
                if factors == 0:
                    raise PolynomialSyntaxError("unexpected '*'", col)
                i += 1
                if i >= len(tokens) or tokens[i][0] not in (1, 2):
                    raise PolynomialSyntaxError("expected a factor after '*'", col)
                continue
            i += 1
            power = 1
            if i < len(tokens) and tokens[i][0] == 3:
                if i + 1 >= len(tokens) or tokens[i + 1][0] != 1:
                    raise PolynomialSyntaxError("expected an integer exponent", tokens[i][2])
                power = int(tokens[i + 1][1])
                i += 2
            if kind == 1:
                coeff = coeff * pow(int(val), power, p) % p
            else:
                if val not in index:
                    raise UnknownVariable("unknown variable %r" % val, col)
                exps[index[val]] += power
            factors += 1
        if factors == 0:
            col = tokens[i][2] if i < len(tokens) else len(text) + 1
            raise PolynomialSyntaxError("expected a term", col)
        if i < len(tokens) and tokens[i][0] == 7:
            raise PolynomialSyntaxError("unexpected character %r" % tokens[i][1], tokens[i][2])
        if max(exps, default=0) > MAX_EXP:
            exc = ExponentOverflow("exponent %d exceeds %d" % (max(exps), MAX_EXP))
            exc.degree = sum(exps)
            raise exc
        k = ring.pack(exps)
        acc[k] = (acc.get(k, 0) + sign * coeff) % p
    return Polynomial(ring, {k: c for k, c in acc.items() if c})


# ---------------------------------------------------------------------------
# linear forms and coordinate changes


def _det_and_rank(rows: list[list[int]], p: int) -> tuple[int, int]:
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = None
        for r in range(rank, n):
            if m[r][c] % p:
                piv = r
                break
        if piv is None:
            det = 0
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
            det = -det
        pv = m[rank][c] % p
        det = det * pv % p
        iv = inv(pv, p)
        for r in range(rank + 1, n):
            f = m[r][c] * iv % p
            if f:
                m[r] = [(a - f * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return det % p, rank


def mat_inverse(rows: list[list[int]], p: int) -> list[list[int]]:
    n = len(rows)
    aug = [[x % p for x in r] + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c]), None)
        if piv is None:
            raise SingularMatrix("matrix is singular mod %d" % p)
        aug[c], aug[piv] = aug[piv], aug[c]
        iv = inv(aug[c][c], p)
        aug[c] = [x * iv % p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [(a - f * b) % p for a, b in zip(aug[r], aug[c])]
    return [r[n:] for r in aug]


def mat_mul(a: list[list[int]], b: list[list[int]], p: int) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(row, col)) % p for col in zip(*b)] for row in a]


@dataclass(frozen=True)
class LinearForm:
    ring: PolyRing
    coeffs: tuple[int, ...]

    def __post_init__(self):
        p = self.ring.p
        c = tuple(int(x) % p for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if len(c) != self.ring.n:
            raise ValueError("linear form needs %d coefficients" % self.ring.n)
        if not any(c):
            raise ValueError("linear form must have a nonzero coefficient")

    def poly(self) -> Polynomial:
        ring = self.ring
        return Polynomial(ring, {ring.var_key(i): c for i, c in enumerate(self.coeffs) if c})

    def __str__(self):
        return format_polynomial(self.poly())


@dataclass(frozen=True)
class LinearChange:
    """x_i -> sum_j matrix[i][j] * x_j."""

    ring: PolyRing
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        p = self.ring.p
        m = tuple(tuple(int(x) % p for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        n = self.ring.n
        if len(m) != n or any(len(r) != n for r in m):
            raise ValueError("change of coordinates must be %dx%d" % (n, n))
        if n and _det_and_rank([list(r) for r in m], p)[0] == 0:
            raise SingularMatrix("change of coordinates is not invertible")

    @classmethod
    def identity(cls, ring: PolyRing) -> "LinearChange":
        n = ring.n
        return cls(ring, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def permutation(cls, ring: PolyRing, perm: Sequence[int]) -> "LinearChange":
        """x_i -> x_{perm[i]}."""
        n = ring.n
        return cls(ring, tuple(tuple(int(perm[i] == j) for j in range(n)) for i in range(n)))

    def inverse(self) -> "LinearChange":
        return LinearChange(self.ring, tuple(map(tuple, mat_inverse([list(r) for r in self.matrix],
                                                                     self.ring.p))))

    def then(self, other: "LinearChange") -> "LinearChange":
        """Change equal to applying self first, then other."""
        prod = mat_mul([list(r) for r in self.matrix], [list(r) for r in other.matrix], self.ring.p)
        return LinearChange(self.ring, tuple(map(tuple, prod)))

    @cached_property
    def images(self) -> list[Polynomial]:
        ring = self.ring
        return [Polynomial(ring, {ring.var_key(j): c for j, c in enumerate(row) if c})
                for row in self.matrix]

    def is_identity(self) -> bool:
        n = self.ring.n
        return all(self.matrix[i][j] == int(i == j) for i in range(n) for j in range(n))

    def apply(self, f: Polynomial) -> Polynomial:
        return apply_linear_change(f, self)


def apply_linear_change(f: Polynomial, change: LinearChange) -> Polynomial:
    """Substitute x_i -> sum_j M[i][j] x_j and expand."""
    ring = f.ring
    if change.ring != ring:
        raise ValueError("change of coordinates from another ring")
    images = change.images
    powers: list[list[Polynomial]] = [[ring.one()] for _ in range(ring.n)]

    def power(i: int, e: int) -> Polynomial:
        table = powers[i]
        while len(table) <= e:
            table.append(table[-1] * images[i])
        return table[e]

    p = ring.p
    acc: dict[int, int] = {}
    get = acc.get
    for k, c in f.terms.items():
        exps = ring.unpack(k)
        term = None
        for i, e in enumerate(exps):
            if e:
                pw = power(i, e)
                term = pw if term is None else term * pw
        if term is None:
            acc[0] = get(0, 0) + c
            continue
        for k2, c2 in term.terms.items():
            acc[k2] = get(k2, 0) + c * c2
    return Polynomial(ring, {k: v % p for k, v in acc.items() if v % p})


def random_linear_form(ring: PolyRing, rng: Rng) -> LinearForm:
    while True:
        coeffs = rng.elements(ring.p, ring.n)
        if any(coeffs):
            return LinearForm(ring, tuple(coeffs))


def random_linear_change(ring: PolyRing, rng: Rng, stats: dict | None = None) -> LinearChange:
    """Dense uniformly random invertible change; singular draws are resampled."""
    n, p = ring.n, ring.p
    while True:
        rows = [rng.elements(p, n) for _ in range(n)]
        if _det_and_rank(rows, p)[0]:
            return LinearChange(ring, tuple(map(tuple, rows)))
        if stats is not None:
            stats["retries"] = stats.get("retries", 0) + 1


def change_sending_to_last(z: LinearForm) -> LinearChange:
    """An invertible change phi with phi(z) = x_n.

    Built as the inverse of a matrix whose last row is z and whose other
    rows are unit vectors; for z = x_n this is the identity.
    """
    ring = z.ring
    n = ring.n
    c = z.coeffs
    pivot = max(i for i in range(n) if c[i])
    rows = [[int(i == k) for i in range(n)] for k in range(n) if k != pivot]
    rows.append(list(c))
    return LinearChange(ring, tuple(map(tuple, mat_inverse(rows, ring.p))))


def substitute_last_variable(f: Polynomial, z: LinearForm) -> Polynomial:
    """Image of f in R/zR, written in the first n-1 variables.

    Uses x_n = -(c_1 x_1 + ... + c_{n-1} x_{n-1}) / c_n.
    """
    ring = f.ring
    if z.ring != ring:
        raise ValueError("linear form from another ring")
    n, p = ring.n, ring.p
    cn = z.coeffs[-1]
    if cn == 0:
        raise BadPivot("linear form has zero coefficient on the last variable")
    target = ring.drop_last()
    s = (-inv(cn, p)) % p
    repl = Polynomial(target, {target.var_key(i): c * s % p
                               for i, c in enumerate(z.coeffs[:-1]) if c})
    powers = [target.one()]
    acc: dict[int, int] = {}
    get = acc.get
    for k, c in f.terms.items():
        exps = ring.unpack(k)
        en = exps[-1]
        while len(powers) <= en:
            powers.append(powers[-1] * repl)
        base = target.pack(exps[:-1])
        for k2, c2 in powers[en].terms.items():
            kk = base + k2
            acc[kk] = get(kk, 0) + c * c2
    return Polynomial(target, {k: v % p for k, v in acc.items() if v % p})


def embed(f: Polynomial, target: PolyRing) -> Polynomial:
    """Re-express f in a ring whose leading variables match f's ring."""
    src = f.ring
    pad = target.n - src.n
    if pad < 0:
        raise ValueError("target ring has fewer variables")
    return Polynomial(target, {target.pack(src.unpack(k) + (0,) * pad): c
                               for k, c in f.terms.items()})


__all__ = [
    "BadPivot", "DivisionByZero", "ExponentOverflow", "LinearChange", "LinearForm", "Monomial",
    "PolyRing", "Polynomial", "PolynomialSyntaxError", "SingularMatrix", "UnknownVariable",
    "apply_linear_change", "change_sending_to_last", "embed", "exponents_of_degree",
    "format_polynomial", "grevlex_cmp", "parse_polynomial", "random_linear_change",
    "random_linear_form", "substitute_last_variable",
]
