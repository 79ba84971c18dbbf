"""
Generator-level duality checks: L D = D L'^T on the entries of a regime
"""

import logging

from app.utils.errors import DomainError
from app.utils.reports import combine, compare_matrices
from app.utils.sparse import SparseMatrix

logger = logging.getLogger(__name__)


def check_duality(L, D, L_dual, name=None, anchor="", expect_fail=False, params=None):
    """
    Compare L D with D L_dual^T on the entries D admits.

    Args:
        L: Generator of the original process on D.left_space
        D: DualityMatrix
        L_dual: Generator of the dual process on D.right_space

    Returns:
        CheckReport; each witness names (s, s') and both sides

    Raises:
        DomainError: if the generators do not live on the spaces of D
    """
    if L.space.states != D.left_space.states:
        raise DomainError(f"{L.name} does not live on the left space of {D.name}")
    if L_dual.space.states != D.right_space.states:
        raise DomainError(f"{L_dual.name} does not live on the right space of {D.name}")
    params = {**D.params, **(params or {}), "margin": D.margin}
    report = compare_matrices(name or f"{D.name}:{L.name}~{L_dual.name}",
                              L.matrix @ D.matrix, D.matrix @ L_dual.matrix.T,
                              L.space.labels(), L_dual.space.labels(), mask=D.mask(),
                              anchor=anchor, regime=D.regime, expect_fail=expect_fail, params=params)
    logger.info(f"Duality {report.name} [{D.regime}]: passed={report.passed}")
    return report


def check_duality_sectors(pairs, name, anchor="", expect_fail=False, params=None):
    """Run check_duality over several (L, D, L_dual) triples, one per sector"""
    reports = [check_duality(L, D, L_dual, anchor=anchor, params=params) for L, D, L_dual in pairs]
    regime = pairs[0][1].regime if pairs else ""
    return combine(name, reports, anchor=anchor, regime=regime, expect_fail=expect_fail, params=params)


def check_stationary_dual(pi, D, name="stationary_dual", params=None):
    """
    sum_s pi(s) D(s, s') is the same for every s' (of a fixed dual sector)
    when pi is stationary for the original process.
    """
    if pi.space.states != D.left_space.states:
        raise DomainError("The measure does not live on the left space of the duality")
    row = D.matrix.vec_mat(pi.probabilities)
    reference = SparseMatrix.from_dense([[row[0]] * len(row)]) if row else SparseMatrix(1, 0)
    return compare_matrices(name, SparseMatrix.from_dense([row]), reference, ["pi D"], D.right_space.labels(),
                            regime=D.regime, params=params)


def check_central_closure(L, D, L_dual, Z, params=None):
    """
    If D is a duality and Z commutes with L_dual, then D Z^T is again a
    duality for the same pair.
    """
    commute = compare_matrices("commutes", Z @ L_dual.matrix, L_dual.matrix @ Z,
                               L_dual.space.labels(), L_dual.space.labels(), params=params)
    closed = check_duality(L, D.with_matrix(D.matrix @ Z.T, f"{D.name}Z^T"), L_dual, params=params)
    return combine("central_closure", [check_duality(L, D, L_dual, params=params), commute, closed],
                   regime=D.regime, params=params)
