"""
Open-boundary lattice processes for the Monte Carlo engine.

OpenSsepProcess is SEP(m) on sites 1..n with a reservoir at site 0, in
the time units where the bulk rate is ``bulk``. OpenAsepProcess is
ASEP_{1,q} on the sites -1, -2, ..., -n with particles entering -1 from
the right at rate 1; array index i holds site -1-i.
"""

import logging

import numpy as np

from app.utils.errors import DomainError
from .gillespie import LatticeProcess

logger = logging.getLogger(__name__)

CONVENTIONS = {"unit_walk": 0.5, "literal": 1.0}


class OpenSsepProcess(LatticeProcess):
    """
    Bulk moves x -> y at rate bulk (k_x/m)(1 - k_y/m). The reservoir feeds
    site 1 at rate alpha/gamma (1 - k_1/m) and drains it at rate
    (1 - alpha)/gamma k_1/m.
    """

    def __init__(self, n_sites, m, alpha, gamma, bulk=0.5):
        if n_sites < 2:
            raise DomainError(f"Need at least two sites, got {n_sites}")
        if not 0 <= alpha <= 1 or not 0 < gamma <= 0.5:
            raise DomainError(f"Need 0 <= alpha <= 1 and 0 < gamma <= 1/2, got {alpha}, {gamma}")
        self.n_sites = n_sites
        self.m = m
        self.alpha = alpha
        self.gamma = gamma
        self.bulk = bulk
        self.enter = alpha / gamma
        self.exit = (1 - alpha) / gamma

    def initial_state(self):
        return np.zeros(self.n_sites, dtype=np.int64)

    def propensities(self, state):
        k = state / self.m
        right = self.bulk * k[:-1] * (1 - k[1:])
        left = self.bulk * k[1:] * (1 - k[:-1])
        return np.concatenate([right, left, [self.enter * (1 - k[0]), self.exit * k[0]]])

    def fire(self, state, channel):
        bonds = self.n_sites - 1
        if channel < bonds:
            state[channel] -= 1
            state[channel + 1] += 1
            return 0
        if channel < 2 * bonds:
            x = channel - bonds
            state[x + 1] -= 1
            state[x] += 1
            return 0
        if channel == 2 * bonds:
            state[0] += 1
            return 1
        state[0] -= 1
        return -1


class OpenAsepProcess(LatticeProcess):
    """
    A particle jumps left (away from the boundary) at rate 1 and right at
    rate q; site -1 is filled at rate 1 when empty.
    """

    def __init__(self, n_sites, q, enter_rate=1.0):
        if n_sites < 2:
            raise DomainError(f"Need at least two sites, got {n_sites}")
        if not 0 <= q <= 1:
            raise DomainError(f"Need 0 <= q <= 1, got {q}")
        self.n_sites = n_sites
        self.q = q
        self.enter_rate = enter_rate

    def initial_state(self):
        return np.zeros(self.n_sites, dtype=np.int64)

    def propensities(self, state):
        outward = state[:-1] * (1 - state[1:])
        inward = self.q * state[1:] * (1 - state[:-1])
        return np.concatenate([outward.astype(float), inward, [self.enter_rate * (1 - state[0])]])

    def fire(self, state, channel):
        bonds = self.n_sites - 1
        if channel < bonds:
            state[channel] = 0
            state[channel + 1] = 1
            return 0
        if channel < 2 * bonds:
            x = channel - bonds
            state[x + 1] = 0
            state[x] = 1
            return 0
        state[0] = 1
        return 1


def tail_counts(state):
    """N_x for every array index: particles at the index or closer to the boundary"""
    return np.cumsum(state)


def upper_tail_counts(state):
    """Particles at the index or further from the boundary"""
    return np.cumsum(state[::-1])[::-1]
