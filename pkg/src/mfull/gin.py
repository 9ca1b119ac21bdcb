"""Generic initial ideals under grevlex by random changes of coordinates."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .field import Rng
from .ideal_ops import Ideal
from .monomial import MonomialIdeal
from .poly import random_linear_change

DEFAULT_TRIALS = 3
RETRY_CAP = 8


class NoAgreement(RuntimeError):
    """Independent random coordinate changes never produced the same lead ideal."""


@dataclass
class GinResult:
    gin: MonomialIdeal
    trials_used: int
    agreement: bool
    seeds: list[int] = field(default_factory=list)
    votes: int = 0


def gin(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS, retry_cap: int = RETRY_CAP) -> GinResult:
    """Majority lead ideal over ``trials`` random dense changes.

    When the trials disagree, further trials are drawn (up to ``retry_cap``
    in total) until one lead ideal holds a strict majority of ``trials``
    agreeing votes.
    """
    if trials < 2:
        raise ValueError("gin needs at least two trials")
    ring = I.ring
    if I.is_zero():
        return GinResult(MonomialIdeal(ring.n, []), 0, True, [])
    seeds: list[int] = []
    counts: Counter = Counter()
    results: list[MonomialIdeal] = []
    budget = max(trials, retry_cap)
    for t in range(budget):
        child = rng.child(t)
        seeds.append(child.seed)
        change = random_linear_change(ring, child)
        L = I.transform(change).lead
        results.append(L)
        counts[L] += 1
        if len(results) >= trials:
            best, votes = counts.most_common(1)[0]
            if votes == len(results):
                return GinResult(best, len(results), True, seeds, votes)
            if votes >= trials // 2 + 1 and votes > len(results) - votes:
                return GinResult(best, len(results), False, seeds, votes)
    best, votes = counts.most_common(1)[0]
    if votes < 2:
        raise NoAgreement("no two of %d random coordinate changes agreed" % len(results))
    return GinResult(best, len(results), False, seeds, votes)


def gin_ideal(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS) -> Ideal:
    return Ideal.from_monomial_ideal(I.ring, gin(I, rng, trials).gin)


def is_gin_stable(I: Ideal, rng: Rng, trials: int = DEFAULT_TRIALS) -> bool:
    return gin(I, rng, trials).gin.is_stable()
