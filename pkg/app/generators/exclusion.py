"""
Asymmetric processes on a segment: multi-species ASEP with optional open
ends, multi-species ASEP(q, m) and the multi-species q-Boson.

ASEP here is ASEP_{1,q}: a particle jumps left at rate 1 and right at
rate q. Among species, the heavier particle of an adjacent pair plays the
particle and the lighter one the hole.
"""

import logging
from fractions import Fraction

from app.qcomb.qnumbers import as_rational, q_int
from app.statespace.enumeration import enumerate_fused, enumerate_lattice
from app.utils.errors import DomainError
from .base_generator import BaseProcess

logger = logging.getLogger(__name__)

BOUNDARY_EVENTS = ("enter_left", "exit_left", "enter_right", "exit_right")


def _parse_boundary(boundary):
    if boundary in (None, "closed"):
        return frozenset()
    events = {boundary} if isinstance(boundary, str) else set(boundary)
    unknown = events - set(BOUNDARY_EVENTS)
    if unknown:
        raise DomainError(f"Unknown boundary events {sorted(unknown)}")
    return frozenset(events)


class AsepProcess(BaseProcess):
    """
    ASEP_{1,q} on L unit sites with n species.

    Open ends are single-species: a particle enters an empty end site at
    rate ``rates[0]`` and leaves an occupied one at rate ``rates[1]``.
    """

    def __init__(self, L, n, q, boundary="closed", rates=(1, 1)):
        if L < 2:
            raise DomainError(f"ASEP needs at least two sites, got L={L}")
        self.L = L
        self.n = n
        self.q = as_rational(q)
        self.boundary = _parse_boundary(boundary)
        self.enter_rate, self.exit_rate = (as_rational(r) for r in rates)
        if self.boundary and n != 1:
            raise DomainError("Open boundaries are only defined for one species")

    def params(self):
        return {"L": self.L, "n": self.n, "q": self.q, "boundary": sorted(self.boundary)}

    def transitions(self, state):
        for x in range(self.L - 1):
            a, b = state[x], state[x + 1]
            if a == b:
                continue
            target = list(state)
            target[x], target[x + 1] = b, a
            yield tuple(target), (self.q if a > b else Fraction(1))
        for event in self.boundary:
            end = 0 if event.endswith("left") else self.L - 1
            occupied = state[end] == 1
            if event.startswith("enter") and not occupied:
                yield state[:end] + (1,) + state[end + 1:], self.enter_rate
            elif event.startswith("exit") and occupied:
                yield state[:end] + (0,) + state[end + 1:], self.exit_rate


def asep(L, n, q, boundary="closed", rates=(1, 1), sector=None):
    """
    Build the ASEP generator on all words of length L (or one sector).

    Returns:
        Generator
    """
    space = enumerate_lattice(L, n, None if _parse_boundary(boundary) else sector)
    return AsepProcess(L, n, q, boundary, rates).build(space)


def _with_holes(site, capacity):
    """Counts (k^(0), k^(1), ..., k^(n)) with k^(0) the holes"""
    return (capacity - sum(site),) + tuple(site)


def last_position_probability(counts, j, m, q):
    """P(the last unfused position holds species j) for a q-exchangeable block"""
    return q ** sum(counts[:j]) * q_int(counts[j], q) / q_int(m, q)


def first_position_probability(counts, i, m, q):
    """P(the first unfused position holds species i) for a q-exchangeable block"""
    return q ** sum(counts[i + 1:]) * q_int(counts[i], q) / q_int(m, q)


def _move(config, x, y, give, take):
    """Site x trades one letter ``give`` for one letter ``take`` from site y"""
    config = [list(site) for site in config]
    if give:
        config[x][give - 1] -= 1
        config[y][give - 1] += 1
    if take:
        config[y][take - 1] -= 1
        config[x][take - 1] += 1
    return tuple(tuple(site) for site in config)


class AsepQmProcess(BaseProcess):
    """
    Multi-species ASEP(q, m) on fused configurations.

    Species j at x swaps with a lighter species i at x+1 at rate
    q P_x(last = j) P_{x+1}(first = i); species j at x+1 swaps with a
    lighter i at x at rate P_x(last = i) P_{x+1}(first = j).
    """

    def __init__(self, m, n, q):
        self.m = tuple(m)
        if any(c < 1 for c in self.m):
            raise DomainError(f"Capacities must be positive, got {self.m}")
        self.n = n
        self.q = as_rational(q)

    def params(self):
        return {"m": self.m, "n": self.n, "q": self.q}

    def transitions(self, state):
        q = self.q
        for x in range(len(self.m) - 1):
            left = _with_holes(state[x], self.m[x])
            right = _with_holes(state[x + 1], self.m[x + 1])
            for j in range(1, self.n + 1):
                for i in range(j):
                    if left[j] and right[i]:
                        rate = q * last_position_probability(left, j, self.m[x], q) \
                            * first_position_probability(right, i, self.m[x + 1], q)
                        yield _move(state, x, x + 1, j, i), rate
                    if right[j] and left[i]:
                        rate = last_position_probability(left, i, self.m[x], q) \
                            * first_position_probability(right, j, self.m[x + 1], q)
                        yield _move(state, x + 1, x, j, i), rate


def asep_qm(m, n, q, sector=None):
    return AsepQmProcess(m, n, q).build(enumerate_fused(m, n, sector))


class QBosonProcess(BaseProcess):
    """
    Multi-species q-Boson: species j leaves x at rate
    q^{k^(j+1) + ... + k^(n)} (1 - q^{k^(j)}), jumping left (or right when
    ``orientation`` is "right"). Sites hold at most ``cap`` particles.
    """

    truncate = True

    def __init__(self, L, q, n=1, cap=3, orientation="left"):
        if orientation not in ("left", "right"):
            raise DomainError(f"Unknown orientation {orientation!r}")
        self.L = L
        self.q = as_rational(q)
        self.n = n
        self.cap = cap
        self.orientation = orientation

    def params(self):
        return {"L": self.L, "q": self.q, "n": self.n, "cap": self.cap, "orientation": self.orientation}

    def transitions(self, state):
        step = -1 if self.orientation == "left" else 1
        for x in range(self.L):
            y = x + step
            if not 0 <= y < self.L:
                continue
            site = state[x]
            for j in range(1, self.n + 1):
                if site[j - 1] == 0:
                    continue
                rate = self.q ** sum(site[j:]) * (1 - self.q ** site[j - 1])
                yield _move(state, x, y, j, 0), rate


def qboson(L, q, n=1, cap=3, orientation="left", sector=None):
    space = enumerate_fused((cap,) * L, n, sector)
    return QBosonProcess(L, q, n, cap, orientation).build(space)


def single_species_qm_rates(k_left, k_right, m_left, m_right, q):
    """
    Right and left jump rates across one bond of single-species ASEP(q, m).

    Works for floats as well as Fractions, so large capacities can be
    evaluated directly.

    Returns:
        (rate to the right, rate to the left)
    """
    def qn(n):
        return n if q == 1 else (1 - q ** n) / (1 - q)

    right = q ** (1 + m_left - k_left + k_right) * qn(k_left) * qn(m_right - k_right) / (qn(m_left) * qn(m_right))
    left = qn(m_left - k_left) * qn(k_right) / (qn(m_left) * qn(m_right))
    return right, left
