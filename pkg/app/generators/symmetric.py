"""
Multi-species SEP(m) on a site graph, with reservoirs or with absorbing
sinks.
"""

import logging
from fractions import Fraction

from app.qcomb.qnumbers import as_rational
from app.statespace.enumeration import enumerate_fused
from app.utils.errors import DomainError
from .base_generator import BaseProcess
from .exclusion import _move, _with_holes

logger = logging.getLogger(__name__)


def _reservoir_densities(densities, n):
    densities = tuple(as_rational(d) for d in densities)
    if len(densities) != n:
        raise DomainError(f"A reservoir needs {n} densities, got {len(densities)}")
    if any(d < 0 for d in densities) or sum(densities) > 1:
        raise DomainError(f"Invalid reservoir densities {densities}")
    return (1 - sum(densities),) + densities


class SepProcess(BaseProcess):
    """
    Species a at x and species b at y trade places at rate
    p(x, y) (k_x^a / m_x)(k_y^b / m_y), holes counted as species 0.

    With ``normalize`` off the capacity denominators are dropped. A
    reservoir site r with densities alpha puts species a at y in place of b
    at rate p(r, y) alpha^(a) k_y^b / m_y. With ``exchange`` off a reservoir
    only fills holes and empties particles, so a and b are never both
    particles.
    """

    def __init__(self, graph, m, n=1, reservoirs=(), normalize=True, exchange=True):
        self.graph = graph
        self.m = tuple(m)
        self.n = n
        self.normalize = normalize
        self.exchange = exchange
        if graph.n_sites != len(self.m) + len(reservoirs):
            raise DomainError(f"Graph has {graph.n_sites} sites but {len(self.m)} bulk sites "
                              f"and {len(reservoirs)} reservoirs were given")
        self.reservoirs = [_reservoir_densities(d, n) for d in reservoirs]

    def params(self):
        return {"m": self.m, "n": self.n, "normalize": self.normalize, "reservoirs": len(self.reservoirs),
                "exchange": self.exchange}

    def _weight(self, count, capacity):
        return Fraction(count, capacity) if self.normalize else Fraction(count)

    def transitions(self, state):
        bulk = len(self.m)
        for x, y, p in self.graph.edges():
            if y >= bulk:
                continue
            left = _with_holes(state[x], self.m[x])
            right = _with_holes(state[y], self.m[y])
            for a in range(self.n + 1):
                for b in range(self.n + 1):
                    if a == b or not left[a] or not right[b]:
                        continue
                    rate = p * self._weight(left[a], self.m[x]) * self._weight(right[b], self.m[y])
                    yield _move(state, x, y, a, b), rate
        for r, densities in enumerate(self.reservoirs):
            for y, p in self.graph.neighbours(bulk + r):
                if y >= bulk:
                    continue
                counts = _with_holes(state[y], self.m[y])
                for a in range(self.n + 1):
                    for b in range(self.n + 1):
                        if a == b or not counts[b] or not densities[a]:
                            continue
                        if a and b and not self.exchange:
                            continue
                        yield _replace(state, y, b, a), p * densities[a] * self._weight(counts[b], self.m[y])


def _replace(config, y, old, new):
    config = [list(site) for site in config]
    if old:
        config[y][old - 1] -= 1
    if new:
        config[y][new - 1] += 1
    return tuple(tuple(site) for site in config)


def sep(graph, m, n=1, reservoirs=(), normalize=True, sector=None, exchange=True):
    """
    SEP(m) generator over the fused space of the bulk sites.

    Args:
        graph: GraphRates over bulk sites followed by reservoir sites
        m: bulk capacities
        n: number of species
        reservoirs: per-reservoir species densities
        normalize: use the k/m form of the rates
        sector: species totals; ignored when reservoirs are present
        exchange: let a reservoir replace one species by another

    Returns:
        Generator
    """
    space = enumerate_fused(m, n, None if reservoirs else sector)
    return SepProcess(graph, m, n, reservoirs, normalize, exchange).build(space)


class SinkSepProcess(BaseProcess):
    """
    SEP(m) whose last sites are absorbing sinks with unbounded room. Bulk
    sites trade species as in SepProcess; a particle of species a at bulk x
    falls into sink r at rate p(x, r) k_x^a / m_x.
    """

    def __init__(self, graph, m, n_sinks, n=1, normalize=True):
        self.graph = graph
        self.m = tuple(m)
        self.n_sinks = n_sinks
        self.n = n
        self.normalize = normalize
        if graph.n_sites != len(self.m) + n_sinks:
            raise DomainError(f"Graph has {graph.n_sites} sites, expected {len(self.m) + n_sinks}")

    def params(self):
        return {"m": self.m, "n": self.n, "sinks": self.n_sinks, "normalize": self.normalize}

    def _weight(self, count, capacity):
        return Fraction(count, capacity) if self.normalize else Fraction(count)

    def transitions(self, state):
        bulk = len(self.m)
        for x, y, p in self.graph.edges():
            if x >= bulk:
                continue
            left = _with_holes(state[x], self.m[x])
            if y >= bulk:
                for a in range(1, self.n + 1):
                    if left[a]:
                        yield _move(state, x, y, a, 0), p * self._weight(left[a], self.m[x])
                continue
            right = _with_holes(state[y], self.m[y])
            for a in range(self.n + 1):
                for b in range(self.n + 1):
                    if a == b or not left[a] or not right[b]:
                        continue
                    yield _move(state, x, y, a, b), p * self._weight(left[a], self.m[x]) \
                        * self._weight(right[b], self.m[y])


def sink_space(m, n_sinks, N, n=1):
    """
    Configurations over the bulk plus sink sites with species totals N
    (an int for one species)
    """
    sector = (N,) if isinstance(N, int) else tuple(N)
    if len(sector) != n:
        raise DomainError(f"Sector {sector} does not have {n} species")
    return enumerate_fused(tuple(m) + (sum(sector),) * n_sinks, n, sector=sector)


def sink_sep(graph, m, n_sinks, N, n=1, normalize=True):
    return SinkSepProcess(graph, m, n_sinks, n, normalize).build(sink_space(m, n_sinks, N, n))
