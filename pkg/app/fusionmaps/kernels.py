"""
The fusion map Phi and the fission kernel Lambda as sparse matrices
"""

import logging
from fractions import Fraction
from itertools import permutations, product

from app.qcomb.permutations import coset_configuration
from app.qcomb.qnumbers import as_rational, q_multinomial
from app.statespace.configurations import phi
from app.statespace.enumeration import enumerate_fused, enumerate_unfused
from app.utils.errors import DomainError
from app.utils.sparse import SparseMatrix

logger = logging.getLogger(__name__)


class Kernel:
    """
    A Markov kernel between two enumerated spaces.

    Rows are indexed by ``row_space``, columns by ``col_space``.
    """

    def __init__(self, row_space, col_space, matrix, name=""):
        if matrix.shape != (len(row_space), len(col_space)):
            raise DomainError(f"Kernel {name}: shape {matrix.shape} does not match the spaces")
        self.row_space = row_space
        self.col_space = col_space
        self.matrix = matrix
        self.name = name

    def __getitem__(self, key):
        row, col = key
        return self.matrix[self.row_space.index(row), self.col_space.index(col)]

    def row(self, state):
        """Nonzero entries of the row of ``state`` as a dict column state -> value"""
        return {self.col_space[j]: v for j, v in self.matrix.row(self.row_space.index(state)).items()}

    def is_stochastic(self):
        return (all(v >= 0 for _, _, v in self.matrix.entries())
                and all(s == 1 for s in self.matrix.row_sums()))

    def apply(self, weights):
        """Row vector times the kernel; ``weights`` is indexed like ``row_space``"""
        return self.matrix.vec_mat(list(weights))

    def __matmul__(self, other):
        if isinstance(other, Kernel):
            return self.matrix @ other.matrix
        return self.matrix @ other

    def __repr__(self):
        return f"Kernel({self.name}, {len(self.row_space)}x{len(self.col_space)})"


def coinversions(letters):
    """Number of pairs y < x with letters[y] < letters[x]"""
    return sum(1 for x in range(len(letters)) for y in range(x) if letters[y] < letters[x])


def block_arrangements(counts, capacity, q):
    """
    Every ordering of one block, weighted by q^{coinversions} over the
    q-multinomial.

    Args:
        counts: species counts (k^(1), ..., k^(n)) of the block; the rest
            are holes

    Returns:
        dict letters -> probability
    """
    holes = capacity - sum(counts)
    if holes < 0:
        raise DomainError(f"Counts {counts} exceed capacity {capacity}")
    letters = [0] * holes + [j for j, k in enumerate(counts, start=1) for _ in range(k)]
    total = q_multinomial(capacity, counts, q)
    return {arrangement: q ** coinversions(arrangement) / total
            for arrangement in sorted(set(permutations(letters)))}


def phi_kernel(m, n, sector=None):
    """
    0/1 matrix of the fusion map from words on sum(m) unit sites to fused
    configurations on the blocks of ``m``.

    Returns:
        Kernel with rows on the unfused space and columns on the fused one
    """
    m = tuple(m)
    source = enumerate_unfused(m, n, sector)
    target = enumerate_fused(m, n, sector)
    matrix = SparseMatrix(len(source), len(target))
    for i, word in enumerate(source):
        matrix[i, target.index(phi(word, m, n))] = 1
    return Kernel(source, target, matrix, f"Phi(m={m}, n={n})")


def lambda_kernel(m, n, q, sector=None):
    """
    The fission kernel: each block of a fused configuration is split into
    an ordering of its letters independently, with probability
    q^{#{y < x : w(y) < w(x)}} / (m_x; k_x)_q.

    Returns:
        Kernel with rows on the fused space and columns on the unfused one
    """
    m = tuple(m)
    q = as_rational(q)
    source = enumerate_fused(m, n, sector)
    target = enumerate_unfused(m, n, sector)
    matrix = SparseMatrix(len(source), len(target))
    cache = {}
    for i, config in enumerate(source):
        laws = []
        for cap, counts in zip(m, config):
            key = (cap, counts)
            if key not in cache:
                cache[key] = block_arrangements(counts, cap, q)
            laws.append(cache[key])
        for choice in product(*[law.items() for law in laws]):
            word = tuple(c for letters, _ in choice for c in letters)
            p = Fraction(1)
            for _, weight in choice:
                p *= weight
            matrix[i, target.index(word)] = p
    logger.debug(f"Built Lambda for m={m}, n={n}, q={q}: nnz={matrix.nnz}")
    return Kernel(source, target, matrix, f"Lambda(m={m}, n={n}, q={q})")


def fiber_sizes(phi_k):
    """|phi^{-1}(y)| for every fused configuration y, in column order"""
    sizes = [0] * len(phi_k.col_space)
    for _, j, _ in phi_k.matrix.entries():
        sizes[j] += 1
    return sizes


def configuration_from_coset(positions, sigma, species_blocks, m):
    """
    The fused configuration M(x, sigma) on sites 0..len(m)-1.

    Args:
        positions: weakly decreasing sites x_1 >= ... >= x_N
        sigma: permutation of 1..N in one-line notation
        species_blocks: (N_1, ..., N_n)
        m: capacities

    Raises:
        DomainError: if a site receives more than m_x particles
    """
    n = len(species_blocks)
    placed = coset_configuration(positions, sigma, species_blocks)
    config = []
    for x, cap in enumerate(m):
        counts = placed.pop(x, (0,) * n)
        if sum(counts) > cap:
            raise DomainError(f"Site {x} holds {sum(counts)} particles but has capacity {cap}")
        config.append(counts)
    if placed:
        raise DomainError(f"Positions {sorted(placed)} lie outside the {len(m)} sites")
    return tuple(config)
