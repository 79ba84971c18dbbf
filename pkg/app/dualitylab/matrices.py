"""
Duality functions evaluated on a pair of state spaces
"""

import logging

from app.statespace.heights import word_of_path
from app.utils.errors import DomainError
from app.utils.sparse import SparseMatrix
from .functions import DUALITY_FUNCTIONS, site_counts

logger = logging.getLogger(__name__)

CLOSED = "closed"
INTERIOR = "interior"
HALFLINE = "halfline"
REGIMES = (CLOSED, INTERIOR, HALFLINE)


def occupied_sites(state, kind):
    """Sites holding at least one particle; height paths are read through their words"""
    if kind == "height":
        state = word_of_path(state)
    return [x for x, c in enumerate(site_counts(state)) if c]


def state_in_regime(state, kind, regime, margin, n_sites):
    if regime == CLOSED:
        return True
    sites = occupied_sites(state, kind)
    if regime == HALFLINE:
        return all(x >= margin for x in sites)
    return all(margin <= x <= n_sites - 1 - margin for x in sites)


def regime_mask(row_space, col_space, regime, margin, n_sites):
    """Predicate on (i, j) admitting entries whose row and column states both lie in the regime"""
    if regime == CLOSED:
        return None
    rows = [state_in_regime(s, row_space.kind, regime, margin, n_sites) for s in row_space]
    cols = [state_in_regime(t, col_space.kind, regime, margin, n_sites) for t in col_space]
    return lambda i, j: rows[i] and cols[j]


class DualityMatrix:
    """
    D(s, s') over ``left_space`` x ``right_space`` with the regime in
    which the duality is claimed.

    Regimes:
        closed      every entry
        interior    entries whose particles all sit at least ``margin``
                    sites from both ends of the window
        halfline    entries with no particle within ``margin`` sites of
                    the truncated far end (index 0)
    """

    def __init__(self, left_space, right_space, matrix, name, regime=CLOSED, margin=0, params=None,
                 n_sites=None):
        if regime not in REGIMES:
            raise DomainError(f"Unknown regime {regime!r}")
        if matrix.shape != (len(left_space), len(right_space)):
            raise DomainError(f"{name}: matrix shape {matrix.shape} does not match the spaces")
        self.left_space = left_space
        self.right_space = right_space
        self.matrix = matrix
        self.name = name
        self.regime = regime
        self.margin = margin
        self.params = dict(params or {})
        self.n_sites = n_sites if n_sites is not None else len(right_space.m)

    @classmethod
    def from_function(cls, function, left_space, right_space, name=None, regime=CLOSED, margin=0,
                      n_sites=None, **params):
        """
        Tabulate ``function(s, t, **params)``; ``function`` is a callable
        or the name of a registered duality function.
        """
        if isinstance(function, str):
            name = name or function
            function = DUALITY_FUNCTIONS[function]
        name = name or function.__name__
        matrix = SparseMatrix(len(left_space), len(right_space))
        for i, s in enumerate(left_space):
            for j, t in enumerate(right_space):
                value = function(s, t, **params)
                if value:
                    matrix[i, j] = value
        logger.debug(f"Tabulated {name} on {len(left_space)}x{len(right_space)} states, nnz={matrix.nnz}")
        return cls(left_space, right_space, matrix, name, regime, margin, params, n_sites)

    def __getitem__(self, key):
        s, t = key
        return self.matrix[self.left_space.index(s), self.right_space.index(t)]

    def admissible(self, i, j):
        """Whether entry (i, j) lies inside the regime"""
        return (state_in_regime(self.left_space[i], self.left_space.kind, self.regime, self.margin, self.n_sites)
                and state_in_regime(self.right_space[j], self.right_space.kind, self.regime, self.margin,
                                    self.n_sites))

    def mask(self):
        """Predicate for compare_matrices, or None in the closed regime"""
        return regime_mask(self.left_space, self.right_space, self.regime, self.margin, self.n_sites)

    def with_matrix(self, matrix, name=None, right_space=None):
        """Same regime, new entries (e.g. after multiplying by an intertwiner)"""
        return DualityMatrix(self.left_space, right_space or self.right_space, matrix, name or self.name,
                             self.regime, self.margin, self.params, self.n_sites)

    def __repr__(self):
        return (f"DualityMatrix({self.name}, {len(self.left_space)}x{len(self.right_space)}, "
                f"{self.regime}, margin={self.margin})")
