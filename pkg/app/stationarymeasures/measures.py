"""
Exact measures on enumerated state spaces and their stationarity checks
"""

import logging
from fractions import Fraction

from app.qcomb.qnumbers import as_rational, q_multinomial
from app.statespace.configurations import encode_config
from app.statespace.enumeration import enumerate_fused, enumerate_lattice
from app.utils.errors import DomainError
from app.utils.reports import compare_matrices
from app.utils.sparse import SparseMatrix

logger = logging.getLogger(__name__)


class Measure:
    """
    A probability measure given by nonnegative weights on a StateSpace.

    Weights are normalized on construction; ``normalization`` keeps the
    original total.
    """

    def __init__(self, space, weights, name=""):
        weights = list(weights)
        if len(weights) != len(space):
            raise DomainError(f"{len(weights)} weights for {len(space)} states")
        if any(w < 0 for w in weights):
            raise DomainError(f"Measure {name} has a negative weight")
        total = sum(weights, Fraction(0))
        if total == 0:
            raise DomainError(f"Measure {name} has zero total weight")
        self.space = space
        self.name = name
        self.normalization = total
        self.probabilities = [w / total for w in weights]

    def __getitem__(self, state):
        return self.probabilities[self.space.index(state)]

    def items(self):
        return zip(self.space, self.probabilities)

    def pushforward(self, mapping):
        """Image law under ``mapping`` as a dict image -> probability"""
        image = {}
        for state, p in self.items():
            key = mapping(state)
            image[key] = image.get(key, Fraction(0)) + p
        return image

    def as_row(self):
        return SparseMatrix.from_dense([self.probabilities])

    def csv_rows(self):
        """Rows (state encoding, numerator, denominator)"""
        return [(encode_config(s), Fraction(p).numerator, Fraction(p).denominator) for s, p in self.items()]

    def __repr__(self):
        return f"Measure({self.name}, states={len(self.space)})"


def _inversion_weight(word, q):
    """q to the number of pairs y < x with word[y] < word[x]"""
    count = sum(1 for x in range(len(word)) for y in range(x) if word[y] < word[x])
    return q ** count


def pi_ms(L, n, q, sector=None):
    """
    Reversible measure of closed multi-species ASEP_{1,q} on L sites:
    pi(w) proportional to q^{#{y < x : w(y) < w(x)}}
    """
    q = as_rational(q)
    space = enumerate_lattice(L, n, sector)
    return Measure(space, [_inversion_weight(w, q) for w in space], f"pi_ms(L={L}, n={n})")


def pi_fused(m, n, q, sector=None):
    """
    Image of pi_ms under the fusion map: within a block the orderings sum
    to a q-multinomial, across blocks every lighter-before-heavier pair
    contributes a factor q.
    """
    q = as_rational(q)
    space = enumerate_fused(m, n, sector)
    weights = []
    for config in space:
        weight = Fraction(1)
        full = [(cap - sum(site),) + tuple(site) for cap, site in zip(m, config)]
        for cap, counts in zip(m, full):
            weight *= q_multinomial(cap, counts[1:], q)
        for z in range(len(full)):
            for w in range(z + 1, len(full)):
                pairs = sum(full[z][a] * full[w][b] for a in range(n + 1) for b in range(a + 1, n + 1))
                weight *= q ** pairs
        weights.append(weight)
    return Measure(space, weights, f"pi_fused(m={tuple(m)}, n={n})")


def sep_product_measure(m, densities, sector=None):
    """
    Product of multinomial(m_x; densities) laws over the sites, the
    reversible measure of SEP(m) whose reservoirs all share ``densities``
    """
    densities = tuple(as_rational(d) for d in densities)
    n = len(densities)
    full = (1 - sum(densities),) + densities
    space = enumerate_fused(m, n, sector)
    weights = []
    for config in space:
        weight = Fraction(1)
        for cap, site in zip(m, config):
            counts = (cap - sum(site),) + tuple(site)
            weight *= q_multinomial(cap, site, Fraction(1))
            for rho, k in zip(full, counts):
                weight *= rho ** k
        weights.append(weight)
    return Measure(space, weights, f"sep_product(m={tuple(m)})")


def check_stationary(measure, generator, name=None, anchor="", params=None):
    """
    Exact test of pi L = 0.

    Returns:
        CheckReport; witnesses are states with a nonzero residual
    """
    if measure.space.states != generator.space.states:
        raise DomainError("Measure and generator live on different state spaces")
    residual = measure.as_row() @ generator.matrix
    zero = SparseMatrix(1, len(generator.space))
    return compare_matrices(name or f"stationary[{measure.name}]", residual, zero,
                            row_labels=["pi L"], col_labels=generator.space.labels(),
                            anchor=anchor, params=params)


def check_detailed_balance(measure, generator, name=None, anchor="", params=None):
    """Exact test of pi(a) L(a, b) = pi(b) L(b, a) for every pair"""
    if measure.space.states != generator.space.states:
        raise DomainError("Measure and generator live on different state spaces")
    flows = SparseMatrix.diagonal(measure.probabilities) @ generator.matrix
    labels = generator.space.labels()
    return compare_matrices(name or f"detailed_balance[{measure.name}]", flows, flows.T,
                            row_labels=labels, col_labels=labels, anchor=anchor, params=params)
