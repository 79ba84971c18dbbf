"""
The product measure on height paths used by dynamic ASEP(q, m).

Steps are drawn from right to left. Given s(x+1) = c, the step at site x is
a down-step (a particle at x) with probability q^c / (alpha + q^c) and an
up-step (a hole) with probability alpha / (alpha + q^c). The right endpoint
s(m) = h is fixed.

At alpha -> infinity the conditional law given the particle number is
proportional to the product of q^c over the particles; ``alpha=None``
selects that limit.
"""

import logging
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from app.utils.errors import DomainError, SingularityError

logger = logging.getLogger(__name__)

BLOCK_EVENTS = ("last_occupied", "last_empty", "first_occupied", "first_empty")


def _step_heights(occupied, h):
    """Heights s(p+1) seen by every position p of a block ending at height h"""
    heights = [0] * len(occupied)
    c = h
    for p in range(len(occupied) - 1, -1, -1):
        heights[p] = c
        c = c + 1 if occupied[p] else c - 1
    return heights


def step_probability(q, alpha, c, particle):
    denominator = alpha + q ** c
    if denominator == 0:
        raise SingularityError(f"alpha + q^{c} vanishes")
    return (q ** c if particle else alpha) / denominator


def path_probability(s, q, alpha):
    """
    Probability of the unit-step path ``s`` under the measure with right
    endpoint s[-1]

    Args:
        s: heights s(0), ..., s(m), consecutive entries differing by 1
        q: asymmetry parameter
        alpha: dynamic parameter

    Returns:
        Fraction
    """
    result = Fraction(1)
    for x in range(len(s) - 1):
        if abs(s[x + 1] - s[x]) != 1:
            raise DomainError(f"Height path {s} has a step of size {s[x + 1] - s[x]}")
        result *= step_probability(q, alpha, s[x + 1], s[x + 1] < s[x])
    return result


def dyn_height_measure(q, alpha, h, m):
    """
    Every unit-step path of length m ending at h with its probability.

    Returns:
        dict path -> Fraction, summing to one
    """
    measure = {}
    for k in range(m + 1):
        for positions in combinations(range(m), k):
            occupied = [p in positions for p in range(m)]
            s = [h]
            for p in range(m - 1, -1, -1):
                s.append(s[-1] + (1 if occupied[p] else -1))
            path = tuple(reversed(s))
            measure[path] = path_probability(path, q, alpha)
    return measure


def block_weight(positions, q, alpha, h, m):
    """
    Unnormalized weight of an occupied set within a block of m positions
    with right-end height h, at fixed particle number.

    The common factor alpha^(m - k) of the holes is dropped, so alpha = 0
    is allowed.
    """
    occupied = [p in positions for p in range(m)]
    weight = Fraction(1)
    for p, c in enumerate(_step_heights(occupied, h)):
        if alpha is None:
            if occupied[p]:
                weight *= q ** c
            continue
        denominator = alpha + q ** c
        if denominator == 0:
            raise SingularityError(f"alpha + q^{c} vanishes in a block of size {m}")
        weight *= (q ** c if occupied[p] else 1) / denominator
    return weight


def block_distribution(q, alpha, h, m, k):
    """Conditional law of the occupied set of a block given k particles"""
    if not 0 <= k <= m:
        raise DomainError(f"A block of size {m} cannot hold {k} particles")
    weights = {positions: block_weight(positions, q, alpha, h, m)
               for positions in combinations(range(m), k)}
    total = sum(weights.values())
    if total == 0:
        raise SingularityError(f"Block of size {m} with {k} particles has zero total weight")
    return {positions: w / total for positions, w in weights.items()}


@lru_cache(maxsize=None)
def block_conditional(q, alpha, h, m, k, event):
    """
    Probability of a boundary event of a block given its particle count.

    Args:
        q: asymmetry parameter
        alpha: dynamic parameter, or None for the alpha -> infinity limit
        h: height at the right end of the block
        m: block size
        k: particles in the block
        event: one of BLOCK_EVENTS

    Returns:
        Fraction
    """
    if event not in BLOCK_EVENTS:
        raise DomainError(f"Unknown block event {event!r}")
    position = m - 1 if event.startswith("last") else 0
    want_occupied = event.endswith("occupied")
    return sum((p for positions, p in block_distribution(q, alpha, h, m, k).items()
                if (position in positions) == want_occupied), Fraction(0))
