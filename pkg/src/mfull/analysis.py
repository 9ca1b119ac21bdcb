"""Deciders for m-fullness, complete m-fullness, componentwise linearity,
t-sequences, and the combined report.

Every randomized decider draws its linear forms from the ``Rng`` it is
given; "general" forms are realized as uniform random ones over F_p and
failures are resampled before a negative verdict is returned.
"""

from __future__ import annotations

import enum
import time
from math import comb
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kernels
from .field import Rng
from .gin import DEFAULT_TRIALS, GinResult, gin
from .groebner import normal_form
from .homology import _koszul_matrix, _Quotient, homological_profile, regularity
from .ideal_ops import (INFINITE, Ideal, colon_length, colon_linear, component_ideal,
                        dim_and_height, m_times, mu, reduce_mod_linear, type_of)
from .monomial import MonomialIdeal
from .poly import (LinearForm, PolyRing, apply_linear_change, exponents_of_degree, format_polynomial,
                   random_linear_form)

DEFAULT_SAMPLES = 3
RETRY_CAP = 8


class DegenerateIdeal(ValueError):
    """Deciders reject the zero ideal and the unit ideal."""


class AllSamplesInfinite(RuntimeError):
    pass


def _require_proper_nonzero(I: Ideal) -> None:
    if I.is_zero():
        raise DegenerateIdeal("the zero ideal is excluded")
    if I.is_unit():
        raise DegenerateIdeal("the unit ideal is excluded")


def random_pivot_form(ring: PolyRing, rng: Rng) -> LinearForm:
    """Random linear form with a nonzero coefficient on the last variable."""
    while True:
        z = random_linear_form(ring, rng)
        if z.coeffs[-1]:
            return z


def coordinate_form(ring: PolyRing, i: int | None = None) -> LinearForm:
    i = ring.n - 1 if i is None else i
    return LinearForm(ring, tuple(int(k == i) for k in range(ring.n)))


# ---------------------------------------------------------------------------
# m-fullness

def m_full_with(I: Ideal, z: LinearForm, mI: Ideal | None = None) -> bool:
    """Whether mI : z = I."""
    if mI is None:
        mI = m_times(I)
    _, phi, _, GC = colon_linear(mI, z)
    # I is always contained in mI : z, so equal series forces equality
    if GC.lead_ideal().hilbert_numerator() != I.numerator:
        return False
    back = phi.inverse()
    for g in GC.elements:
        if not I.contains(apply_linear_change(g, back)):
            return False
    for g in I.gens:
        if normal_form(apply_linear_change(g, phi), GC).terms:
            return False
    return True


def is_m_full(I: Ideal, rng: Rng, samples: int = DEFAULT_SAMPLES) -> bool:
    _require_proper_nonzero(I)
    mI = m_times(I)
    for _ in range(samples):
        if m_full_with(I, random_linear_form(I.ring, rng), mI):
            return True
    return False


def complete_m_full_chain(I: Ideal, choose: Callable[[Ideal, int], LinearForm],
                          samples: int = DEFAULT_SAMPLES) -> list[LinearForm] | None:
    """Follow the recursive definition, returning the forms z_n, ..., z_1
    that certify the complete m-full property, or None.

    ``choose(J, attempt)`` supplies the candidate form at each level.
    """
    chain: list[LinearForm] = []
    cur = I
    while cur.ring.n > 0:
        found = None
        for attempt in range(samples):
            z = choose(cur, attempt)
            if m_full_with(cur, z):
                found = z
                break
        if found is None:
            return None
        chain.append(found)
        cur = reduce_mod_linear(cur, found)
    return chain


def is_completely_m_full_recursive(I: Ideal, rng: Rng, samples: int = DEFAULT_SAMPLES) -> bool:
    _require_proper_nonzero(I)
    return complete_m_full_chain(I, lambda J, _: random_pivot_form(J.ring, rng), samples) is not None


def has_coordinate_complete_m_full_property(I: Ideal) -> bool:
    """Whether (I; x_n, x_{n-1}, ..., x_1) has the complete m-full property."""
    return complete_m_full_chain(I, lambda J, _: coordinate_form(J.ring), samples=1) is not None


# ---------------------------------------------------------------------------
# t-values and t-sequences

def t_value(I: Ideal, rng: Rng, samples: int = DEFAULT_SAMPLES,
            forms: list | None = None) -> int:
    """min over sampled linear forms z of l((I:z)/I), skipping infinite ones."""
    if I.is_zero():
        return 0
    best = INFINITE
    finite = 0
    draws = 0
    while finite < samples and draws < samples + RETRY_CAP:
        z = random_linear_form(I.ring, rng)
        draws += 1
        length = colon_length(I, z)
        if forms is not None:
            forms.append((z, length))
        if length != INFINITE:
            finite += 1
            best = min(best, length)
    if best == INFINITE:
        raise AllSamplesInfinite("every sampled form gave an infinite colon length")
    return int(best)


@dataclass
class TSequence:
    values: list[int]
    B: int
    forms_used: list[LinearForm]
    samples_per_level: int
    images: list[Ideal] = field(default_factory=list, repr=False)
    seed: int | None = None

    def __iter__(self):
        return iter(self.values)


def image_chain(I: Ideal, rng: Rng) -> tuple[list[Ideal], list[LinearForm]]:
    """Images of I in i variables for i = 1..n (index i-1), and z_n, ..., z_2."""
    cur = I
    imgs = [I]
    zs = []
    while cur.ring.n > 1:
        z = random_pivot_form(cur.ring, rng)
        zs.append(z)
        cur = reduce_mod_linear(cur, z)
        imgs.append(cur)
    imgs.reverse()
    return imgs, zs


def t_sequence(I: Ideal, rng: Rng, samples: int = DEFAULT_SAMPLES) -> TSequence:
    _require_proper_nonzero(I)
    imgs, zs = image_chain(I, rng)
    values = [t_value(J, rng, samples) for J in imgs]
    if values[0] != 1:
        raise AssertionError("t_0 = %d, expected 1" % values[0])
    return TSequence(values, sum(values), zs, samples, imgs, rng.seed)


def is_completely_m_full_via_B(I: Ideal, rng: Rng, samples: int = DEFAULT_SAMPLES) -> bool:
    _require_proper_nonzero(I)
    return mu(I).total == t_sequence(I, rng, samples).B


# ---------------------------------------------------------------------------
# componentwise linearity

class _TruncatedQuotient(_Quotient):
    """R/I_{>=j}: all of R below degree j, R/I from degree j on."""

    def __init__(self, I: Ideal, j: int):
        super().__init__(I)
        self.j = j

    def basis(self, d: int) -> list[int]:
        if 0 <= d < self.j:
            if d not in self._basis:
                self._basis[d] = [self.ring.pack(e) for e in exponents_of_degree(self.ring.n, d)]
            return self._basis[d]
        return super().basis(d)

    def mult(self, var: int, d: int) -> np.ndarray:
        if d + 1 < self.j:
            key = (var, d)
            if key not in self._mult:
                src, dst = self.basis(d), self.basis(d + 1)
                col = {k: i for i, k in enumerate(dst)}
                xk = self.ring.var_key(var)
                mat = np.zeros((len(src), len(dst)), dtype=np.int64)
                for r, k in enumerate(src):
                    mat[r, col[k + xk]] = 1
                self._mult[key] = mat
            return self._mult[key]
        return super().mult(var, d)


def _truncation_is_linear(I: Ideal, j: int) -> bool:
    """Whether I_{>=j} has a linear resolution, by Koszul homology of R/I_{>=j}.

    The quotient is built from the basis of I, so no generators of I_j are
    ever formed.
    """
    Q = _TruncatedQuotient(I, j)
    n, p = I.n, I.ring.p
    for i in range(1, n + 1):
        for jj in range(i, n + j + 1):
            if jj == j - 1 + i:
                continue
            dim = comb(n, i) * len(Q.basis(jj - i))
            if dim == 0:
                continue
            mat_out, _, _ = _koszul_matrix(Q, i, jj)
            r_out = kernels.rank_mod_p(mat_out, p) if mat_out.size else 0
            r_in = 0
            if i < n:
                mat_in, _, _ = _koszul_matrix(Q, i + 1, jj)
                r_in = kernels.rank_mod_p(mat_in, p) if mat_in.size else 0
            if dim - r_out - r_in:
                return False
    return True


@dataclass
class ComponentCheck:
    degree: int
    linear: bool
    method: str


def componentwise_linear_details(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS,
                                 reg: int | None = None) -> tuple[bool, list[ComponentCheck]]:
    from .homology import has_linear_resolution
    _require_proper_nonzero(I)
    prof = mu(I).profile
    lo, hi = min(prof), max(prof)
    checks = []
    for j in range(lo, hi + 1):
        C = component_ideal(I, j)
        if C.is_zero():
            continue
        ok = has_linear_resolution(C, rng.child(1000 + j), trials)
        checks.append(ComponentCheck(j, ok, "gin"))
        if not ok:
            return False, checks
    if reg is None:
        reg = regularity(I, rng.child(999), trials)
    ok = _truncation_is_linear(I, reg + 1)
    checks.append(ComponentCheck(reg + 1, ok, "koszul-sentinel"))
    return ok, checks


def is_componentwise_linear(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS) -> bool:
    return componentwise_linear_details(I, rng, trials)[0]


def nagel_romer(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS,
                gin_result: GinResult | None = None) -> bool:
    """gin(I) is stable and mu(I) = mu(gin(I))."""
    _require_proper_nonzero(I)
    G = (gin_result or gin(I, rng, trials)).gin
    return G.is_stable() and mu(I).total == len(G.gens)


# ---------------------------------------------------------------------------
# low type

class LowType(enum.Enum):
    HOLDS = "true"
    FAILS = "false"
    VACUOUS = "vacuous"

    def __bool__(self):
        return self is not LowType.FAILS


def linear_part_dimension(I: Ideal) -> int:
    """dim_K I_1."""
    return I.lead.truncate(1).gens.__len__() if not I.is_zero() else 0


def low_type_check(I: Ideal, rng: Rng, *, cwl: bool | None = None, cm: bool | None = None,
                   height: int | None = None, type_: int | None = None) -> LowType:
    """A componentwise linear CM ideal of height h and type r <= h contains
    h - r independent linear forms; VACUOUS when the hypotheses fail."""
    _require_proper_nonzero(I)
    if cwl is None:
        cwl = is_componentwise_linear(I, rng)
    if height is None:
        height = dim_and_height(I)[1]
    if cm is None:
        cm = homological_profile(I).cohen_macaulay
    if type_ is None:
        type_ = type_of(I)
    if not cwl or not cm or type_ == INFINITE or height < type_:
        return LowType.VACUOUS
    return LowType.HOLDS if linear_part_dimension(I) >= height - type_ else LowType.FAILS


# ---------------------------------------------------------------------------
# report

@dataclass
class Report:
    ring: PolyRing
    generators: list[str]
    mu: int | None = None
    mu_profile: dict[int, int] | None = None
    t_sequence: list[int] | None = None
    B: int | None = None
    type: int | float | None = None
    height: int | None = None
    dim: int | None = None
    regularity: int | None = None
    gin: list[str] | None = None
    gin_agreement: bool | None = None
    gin_stable: bool | None = None
    m_full: bool | None = None
    completely_m_full_recursive: bool | None = None
    completely_m_full_B: bool | None = None
    componentwise_linear: bool | None = None
    nagel_romer: bool | None = None
    consistent: bool | None = None
    projective_dimension: int | None = None
    depth: int | None = None
    cohen_macaulay: bool | None = None
    gorenstein: bool | None = None
    low_type_check: str | None = None
    betti: list[list[int]] | None = None
    seed: int = 0
    seeds: dict[str, int] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    tseq: TSequence | None = field(default=None, repr=False)
    gin_result: GinResult | None = field(default=None, repr=False)

    FLAGS = ("completely_m_full_recursive", "completely_m_full_B", "componentwise_linear",
             "nagel_romer")

    def flags(self) -> dict[str, bool | None]:
        return {k: getattr(self, k) for k in self.FLAGS}

    def to_json_dict(self) -> dict:
        typ = self.type
        if typ == INFINITE:
            typ = "infinite"
        return {
            "ring": {"p": self.ring.p, "vars": list(self.ring.names)},
            "generators": self.generators,
            "mu": self.mu,
            "t_sequence": self.t_sequence,
            "B": self.B,
            "type": typ,
            "height": self.height,
            "dim": self.dim,
            "regularity": self.regularity,
            "gin": self.gin,
            "gin_stable": self.gin_stable,
            "m_full": self.m_full,
            "completely_m_full_recursive": self.completely_m_full_recursive,
            "completely_m_full_B": self.completely_m_full_B,
            "componentwise_linear": self.componentwise_linear,
            "nagel_romer": self.nagel_romer,
            "consistent": self.consistent,
            "seed": self.seed,
            "betti": self.betti,
            "projective_dimension": self.projective_dimension,
            "depth": self.depth,
            "cohen_macaulay": self.cohen_macaulay,
            "gorenstein": self.gorenstein,
            "low_type_check": self.low_type_check,
            "gin_agreement": self.gin_agreement,
            "errors": dict(sorted(self.errors.items())),
        }


def monomial_strings(ring: PolyRing, M: MonomialIdeal) -> list[str]:
    return [format_polynomial(ring.monomial(g)) for g in M.gens]


def analyze(I: Ideal, rng: Rng, samples: int = DEFAULT_SAMPLES, trials: int = DEFAULT_TRIALS,
            betti: bool = True) -> Report:
    """Run every decider on I and collect the verdicts.

    Each decider gets its own child generator, so the report is a pure
    function of the ideal and the seed.  Failures of individual fields are
    recorded in ``errors`` without aborting the rest.
    """
    _require_proper_nonzero(I)
    ring = I.ring
    rep = Report(ring, [format_polynomial(g) for g in I.gens], seed=rng.seed)

    def run(name: str, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        except Exception as exc:  # recorded per field
            rep.errors[name] = "%s: %s" % (type(exc).__name__, exc)
            return None
        finally:
            rep.timings[name] = time.perf_counter() - t0

    def child(name: str, idx: int) -> Rng:
        r = rng.child(idx)
        rep.seeds[name] = r.seed
        return r

    m = run("mu", lambda: mu(I))
    if m is not None:
        rep.mu, rep.mu_profile = m.total, m.profile
    ts = run("t_sequence", lambda: t_sequence(I, child("t_sequence", 1), samples))
    rep.tseq = ts
    if ts is not None:
        rep.t_sequence, rep.B = ts.values, ts.B
    dh = run("dim", lambda: dim_and_height(I))
    if dh is not None:
        rep.dim, rep.height = dh
    rep.type = run("type", lambda: type_of(I))
    g = run("gin", lambda: gin(I, child("gin", 2), trials))
    rep.gin_result = g
    if g is not None:
        rep.gin = monomial_strings(ring, g.gin)
        rep.gin_agreement = g.agreement
        rep.gin_stable = g.gin.is_stable()
        if rep.gin_stable:
            rep.regularity = g.gin.max_degree()
    if rep.regularity is None:
        rep.regularity = run("regularity", lambda: regularity(I, child("regularity", 3), trials))
    rep.m_full = run("m_full", lambda: is_m_full(I, child("m_full", 4), samples))
    rep.completely_m_full_recursive = run(
        "completely_m_full_recursive",
        lambda: is_completely_m_full_recursive(I, child("completely_m_full_recursive", 5), samples))
    if rep.mu is not None and rep.B is not None:
        rep.completely_m_full_B = rep.mu == rep.B
    rep.componentwise_linear = run(
        "componentwise_linear",
        lambda: componentwise_linear_details(I, child("componentwise_linear", 6), trials,
                                             reg=rep.regularity)[0])
    if g is not None and rep.mu is not None:
        rep.nagel_romer = bool(rep.gin_stable and rep.mu == len(g.gin.gens))
    prof = None
    if betti:
        prof = run("betti", lambda: homological_profile(I, dim=rep.dim))
    if prof is not None:
        rep.projective_dimension = prof.projective_dimension
        rep.depth = prof.depth
        rep.cohen_macaulay = prof.cohen_macaulay
        rep.gorenstein = prof.gorenstein
        rep.betti = [[i, j, v] for i, j, v in prof.betti.nonzero()]
    if (rep.componentwise_linear is not None and rep.cohen_macaulay is not None
            and rep.height is not None and rep.type is not None):
        rep.low_type_check = low_type_check(
            I, rng, cwl=rep.componentwise_linear, cm=rep.cohen_macaulay, height=rep.height,
            type_=rep.type).value
    flags = list(rep.flags().values())
    if all(f is not None for f in flags):
        rep.consistent = len(set(flags)) == 1
    return rep
