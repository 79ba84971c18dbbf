"""
Indexed enumeration of fused and unfused state spaces
"""

import logging
from itertools import product

from app.utils.errors import DomainError
from .configurations import encode_config, species_totals

logger = logging.getLogger(__name__)

FUSED = "fused"
UNFUSED = "unfused"


class StateSpace:
    """
    An ordered list of configurations with an index lookup.

    Every matrix built over the space uses this order for its rows and
    columns.
    """

    def __init__(self, kind, m, n, states, sector=None, feasible=True):
        self.kind = kind
        self.m = tuple(m)
        self.n = n
        self.sector = tuple(sector) if sector is not None else None
        self.states = list(states)
        self.feasible = feasible
        self._index = {s: i for i, s in enumerate(self.states)}

    def index(self, state):
        try:
            return self._index[state]
        except KeyError:
            raise DomainError(f"{state} is not a state of this {self.kind} space") from None

    def get(self, state):
        """Index of ``state`` or None when it lies outside the space"""
        return self._index.get(state)

    def __contains__(self, state):
        return state in self._index

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, i):
        return self.states[i]

    def labels(self):
        m = self.m if self.kind == UNFUSED else None
        return [encode_config(s, m) for s in self.states]

    def __repr__(self):
        return f"StateSpace({self.kind}, m={self.m}, n={self.n}, sector={self.sector}, size={len(self)})"


def _site_options(capacity, n):
    return [c for c in product(range(capacity + 1), repeat=n) if sum(c) <= capacity]


def enumerate_space(kind, m, n, sector=None):
    """
    Enumerate a fused or unfused space in lexicographic order of the
    flattened count (or letter) vector.

    Args:
        kind: "fused" or "unfused"
        m: capacities per site
        n: number of species
        sector: optional species totals (N_1, ..., N_n)

    Returns:
        StateSpace; an infeasible sector gives an empty space with
        ``feasible`` False
    """
    m = tuple(m)
    if n < 1:
        raise DomainError(f"At least one species is needed, got n={n}")
    if sector is not None:
        sector = tuple(sector)
        if len(sector) != n:
            raise DomainError(f"Sector {sector} does not have {n} species")
        if sum(sector) > sum(m):
            logger.warning(f"Sector {sector} cannot fit on capacities {m}")
            return StateSpace(kind, m, n, [], sector, feasible=False)

    if kind == FUSED:
        candidates = product(*[_site_options(c, n) for c in m])
    elif kind == UNFUSED:
        candidates = product(range(n + 1), repeat=sum(m))
    else:
        raise DomainError(f"Unknown state space kind {kind!r}")

    if sector is None:
        states = list(candidates)
    else:
        states = [s for s in candidates if species_totals(s, n) == sector]
    logger.debug(f"Enumerated {len(states)} {kind} states for m={m}, n={n}, sector={sector}")
    return StateSpace(kind, m, n, states, sector)


def enumerate_fused(m, n=1, sector=None):
    return enumerate_space(FUSED, m, n, sector)


def enumerate_unfused(m, n=1, sector=None):
    return enumerate_space(UNFUSED, m, n, sector)


def enumerate_lattice(L, n=1, sector=None):
    """Unfused space on L unit sites"""
    return enumerate_space(UNFUSED, (1,) * L, n, sector)


def particle_sector(L, max_particles, n=1):
    """All words on L sites with at most ``max_particles`` particles"""
    states = [s for s in product(range(n + 1), repeat=L) if sum(1 for c in s if c) <= max_particles]
    return StateSpace(UNFUSED, (1,) * L, n, states)


def fused_particle_sector(m, max_particles, n=1):
    """Fused configurations over ``m`` holding at most ``max_particles`` particles"""
    states = [s for s in enumerate_fused(m, n) if sum(sum(site) for site in s) <= max_particles]
    return StateSpace(FUSED, m, n, states)
