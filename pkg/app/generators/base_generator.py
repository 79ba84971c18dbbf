"""
Base process interface and the Generator container
"""

import logging
from abc import ABC, abstractmethod

from app.utils.errors import DomainError, ParameterError
from app.utils.sparse import SparseMatrix, fstr

logger = logging.getLogger(__name__)


class Generator:
    """
    A rate matrix over an enumerated state space.

    Off-diagonal entries are the jump rates; the diagonal makes every row
    sum to zero.
    """

    def __init__(self, space, matrix, name="", params=None):
        if matrix.shape != (len(space), len(space)):
            raise DomainError(f"Matrix shape {matrix.shape} does not match {len(space)} states")
        self.space = space
        self.matrix = matrix
        self.name = name
        self.params = dict(params or {})

    def rate(self, source, target):
        return self.matrix[self.space.index(source), self.space.index(target)]

    def jumps(self, state):
        """Outgoing (target, rate) pairs of ``state``, diagonal excluded"""
        i = self.space.index(state)
        return [(self.space[j], v) for j, v in self.matrix.row(i).items() if j != i]

    def is_conservative(self):
        return all(s == 0 for s in self.matrix.row_sums())

    def min_off_diagonal(self):
        values = [v for i, j, v in self.matrix.entries() if i != j]
        return min(values) if values else 0

    def restrict(self, subspace):
        """
        Restriction to a closed subset of states (a sector).

        Raises:
            DomainError: if a state of ``subspace`` can leave it
        """
        matrix = SparseMatrix(len(subspace), len(subspace))
        for i, state in enumerate(subspace):
            for target, rate in self.jumps(state):
                j = subspace.get(target)
                if j is None:
                    raise DomainError(f"{self.name}: {state} leaves the sector through {target}")
                matrix.add(i, j, rate)
                matrix.add(i, i, -rate)
        return Generator(subspace, matrix, self.name, self.params)

    def to_triplets(self):
        return self.matrix.to_triplets()

    def to_numpy(self, dtype=float):
        return self.matrix.to_numpy(dtype)

    def __repr__(self):
        return f"Generator({self.name}, states={len(self.space)}, nnz={self.matrix.nnz})"


class BaseProcess(ABC):
    """
    Abstract base class for the particle processes.
    Every process lists the jumps out of a single state; ``build`` turns
    them into a Generator.
    """

    truncate = False

    @abstractmethod
    def transitions(self, state):
        """
        Jumps out of a state

        Args:
            state: a configuration of the process's state space

        Returns:
            iterable of (target_state, rate) pairs
        """
        pass

    @property
    def name(self) -> str:
        """Return the name of the process"""
        return self.__class__.__name__

    def params(self):
        return {}

    def build(self, space):
        """
        Assemble the generator over ``space``.

        Raises:
            ParameterError: if a rate is negative
            DomainError: if a jump leaves the space and the process does not
                truncate
        """
        matrix = SparseMatrix(len(space), len(space))
        dropped = 0
        for i, state in enumerate(space):
            for target, rate in self.transitions(state):
                if rate == 0:
                    continue
                if rate < 0:
                    raise ParameterError(f"{self.name}: negative rate {fstr(rate)} from {state} to {target}")
                j = space.get(target)
                if j is None:
                    if self.truncate:
                        dropped += 1
                        continue
                    raise DomainError(f"{self.name}: jump from {state} to {target} leaves the state space")
                matrix.add(i, j, rate)
                matrix.add(i, i, -rate)
        if dropped:
            logger.debug(f"{self.name}: dropped {dropped} jumps past the truncation")
        logger.debug(f"Built {self.name} generator on {len(space)} states, nnz={matrix.nnz}")
        return Generator(space, matrix, self.name, self.params())
