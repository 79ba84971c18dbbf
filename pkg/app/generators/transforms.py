"""
Relabelings of generators: transport along a bijection of states, space
reversal, the height-to-configuration bridge and species projection.
"""

import logging
from itertools import combinations

from app.statespace.configurations import project
from app.statespace.enumeration import FUSED, UNFUSED, StateSpace
from app.statespace.heights import height_config_bridge
from app.utils.errors import DomainError
from app.utils.reports import compare_matrices
from app.utils.sparse import SparseMatrix
from .base_generator import Generator

logger = logging.getLogger(__name__)


def transport(generator, mapping, kind, m, n, name=None):
    """
    Carry a generator along a bijection of states.

    Args:
        generator: Generator to relabel
        mapping: callable sending each state to its image
        kind, m, n: description of the target StateSpace

    Returns:
        Generator on the sorted images with L'(f(a), f(b)) = L(a, b)
    """
    images = [mapping(s) for s in generator.space]
    if len(set(images)) != len(images):
        raise DomainError(f"Mapping is not injective on {generator.space!r}")
    space = StateSpace(kind, m, n, sorted(images), generator.space.sector)
    position = [space.index(image) for image in images]
    matrix = SparseMatrix(len(space), len(space))
    for i, j, v in generator.matrix.entries():
        matrix[position[i], position[j]] = v
    return Generator(space, matrix, name or generator.name, generator.params)


def reverse_state(state):
    return tuple(reversed(state))


def space_reverse(generator):
    """The same process seen in the mirror x -> L - 1 - x"""
    space = generator.space
    return transport(generator, reverse_state, space.kind, tuple(reversed(space.m)), space.n,
                     f"{generator.name}[reversed]")


def heights_to_configs(generator):
    """Move a generator on height paths to one-species fused configurations"""
    m = generator.space.m

    def to_config(s):
        return tuple((k,) for k in height_config_bridge(s, m))

    return transport(generator, to_config, FUSED, m, 1, f"{generator.name}[configs]")


def projection_kernel(source, target, partition, n):
    """
    0/1 matrix of the species projection from ``source`` (n species) to
    ``target``; row a has a single one at project(a).
    """
    matrix = SparseMatrix(len(source), len(target))
    for i, state in enumerate(source):
        matrix[i, target.index(project(state, partition, n))] = 1
    return matrix


def consecutive_partitions(n, p):
    """All ways to merge the labels 0..n into p + 1 consecutive groups"""
    if not 1 <= p <= n:
        raise DomainError(f"Need 1 <= p <= n, got p={p}, n={n}")
    partitions = []
    for cuts in combinations(range(1, n + 1), p):
        bounds = (0,) + cuts + (n + 1,)
        partitions.append([list(range(a, b)) for a, b in zip(bounds, bounds[1:])])
    return partitions


def check_projection(big, small, partition, n):
    """The projected n-species generator is the generator of the merged species: L P = P L'"""
    P = projection_kernel(big.space, small.space, partition, n)
    return compare_matrices(f"projection({big.name}, {partition})", big.matrix @ P, P @ small.matrix,
                            row_labels=big.space, col_labels=small.space, anchor="projections are Markov",
                            params={"n": n, "partition": str(partition)})


def unit_word(config):
    """Word of a fused configuration whose sites all have capacity one"""
    if any(sum(site) > 1 for site in config):
        raise DomainError(f"{config} has a site holding more than one particle")
    return tuple(next((j for j, c in enumerate(site, start=1) if c), 0) for site in config)


def as_unfused(generator, m):
    """
    Read a generator over unit-capacity fused configurations as one over
    words, grouped into blocks of sizes ``m``.
    """
    if sum(m) != len(generator.space.m) or any(c != 1 for c in generator.space.m):
        raise DomainError(f"{generator.name} does not live on {sum(m)} unit sites")
    return transport(generator, unit_word, UNFUSED, m, generator.space.n, f"{generator.name}[unfused]")
