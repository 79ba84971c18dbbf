"""
Generator-level checks of the Rogers-Pitman intertwining behind the fused
processes, and of its symmetric variant with Lambda a multiple of Phi^T.
"""

import logging
from fractions import Fraction

from app.qcomb.qnumbers import as_rational
from app.utils.errors import DomainError
from app.utils.reports import combine, compare_matrices
from app.utils.sparse import SparseMatrix
from .kernels import fiber_sizes, lambda_kernel, phi_kernel

logger = logging.getLogger(__name__)

ANCHOR = "stochastic fusion by Rogers-Pitman intertwining"


def _check_spaces(L_unfused, L_fused, lam, phi_k):
    if lam.row_space.states != L_fused.space.states or lam.col_space.states != L_unfused.space.states:
        raise DomainError("Lambda does not map the fused space onto the unfused space of the generators")
    if phi_k.row_space.states != L_unfused.space.states or phi_k.col_space.states != L_fused.space.states:
        raise DomainError("Phi does not map the unfused space onto the fused space of the generators")


def _row(values):
    return SparseMatrix.from_dense([list(values)])


def check_rogers_pitman(L_unfused, L_fused, lam, phi_k, pi, params=None):
    """
    The four intertwining clauses plus idempotence of Phi Lambda:

        lambda_phi      Lambda Phi = Id on the fused space
        lift_stationary (pi Lambda) L_unfused = 0
        lumped_rates    Lambda L_unfused Phi = L_fused
        stationary      pi L_fused = 0
        idempotent      (Phi Lambda)^2 = Phi Lambda

    Args:
        pi: Measure on the fused space

    Returns:
        CheckReport combining one report per clause
    """
    _check_spaces(L_unfused, L_fused, lam, phi_k)
    params = dict(params or {})
    fused_labels = L_fused.space.labels()
    unfused_labels = L_unfused.space.labels()
    identity = SparseMatrix.identity(len(L_fused.space))

    lifted = lam.apply(pi.probabilities)
    projector = phi_k.matrix @ lam.matrix
    clauses = [
        compare_matrices("lambda_phi", lam.matrix @ phi_k.matrix, identity,
                         fused_labels, fused_labels, anchor=ANCHOR, params=params),
        compare_matrices("lift_stationary", _row(lifted) @ L_unfused.matrix,
                         SparseMatrix(1, len(L_unfused.space)),
                         ["pi Lambda L"], unfused_labels, anchor=ANCHOR, params=params),
        compare_matrices("lumped_rates", lam.matrix @ L_unfused.matrix @ phi_k.matrix, L_fused.matrix,
                         fused_labels, fused_labels, anchor=ANCHOR, params=params),
        compare_matrices("stationary", pi.as_row() @ L_fused.matrix, SparseMatrix(1, len(L_fused.space)),
                         ["pi L"], fused_labels, anchor=ANCHOR, params=params),
        compare_matrices("idempotent", projector @ projector, projector,
                         unfused_labels, unfused_labels, anchor=ANCHOR, params=params),
    ]
    report = combine("rogers_pitman", clauses, anchor=ANCHOR, regime="closed", params=params)
    logger.info(f"Rogers-Pitman clauses for {L_fused.name}: passed={report.passed}, "
                f"failed={report.details['failed_parts']}")
    return report


def rogers_pitman_asep(m, n, q, sector=None):
    """Fusion of multi-species ASEP_{1,q} on sum(m) sites into ASEP(q, m)"""
    from app.generators.exclusion import asep, asep_qm
    from app.stationarymeasures.measures import pi_fused

    m = tuple(m)
    q = as_rational(q)
    L_unfused = asep(sum(m), n, q, sector=sector)
    L_fused = asep_qm(m, n, q, sector=sector)
    return check_rogers_pitman(L_unfused, L_fused, lambda_kernel(m, n, q, sector), phi_kernel(m, n, sector),
                               pi_fused(m, n, q, sector), params={"m": m, "n": n, "q": q, "sector": sector})


def rogers_pitman_sep(graph, m, n, sector=None):
    """
    The symmetric case: SEP on the unit sites of ``graph`` with
    p(u, v) = p(x, y) / (m_x m_y) fuses into normalized SEP(m) on ``graph``.
    """
    from app.generators.graphs import unfuse_graph
    from app.generators.symmetric import sep
    from app.generators.transforms import as_unfused
    from app.stationarymeasures.measures import pi_fused

    m = tuple(m)
    units = sep(unfuse_graph(graph, m), (1,) * sum(m), n, sector=sector)
    L_unfused = as_unfused(units, m)
    L_fused = sep(graph, m, n, sector=sector)
    one = Fraction(1)
    return check_rogers_pitman(L_unfused, L_fused, lambda_kernel(m, n, one, sector), phi_kernel(m, n, sector),
                               pi_fused(m, n, one, sector), params={"m": m, "n": n, "q": 1, "sector": sector})


def proportionality_constant(lam, phi_k):
    """
    The constant c with Lambda = c Phi^T, or None when Lambda is not a
    multiple of Phi^T
    """
    sizes = fiber_sizes(phi_k)
    if len(set(sizes)) != 1:
        return None
    c = Fraction(1, sizes[0])
    return c if lam.matrix == phi_k.matrix.T.scale(c) else None


def check_rp_inter(L, lam, phi_k, V, D, pi, expect_fail=False, params=None):
    """
    Intertwining of the fused process with the fused duality function
    D~ = Lambda D Phi, for a reversible unfused process.

    Hypotheses: Lambda Phi = Id, V^{-1} L V = L^T, Lambda = c Phi^T,
    L D = D L^T and pi_S D Phi Lambda = pi_S D with pi_S = pi Lambda.
    Conclusion: pi Q D~ = pi D~ Q^T with Q = Lambda L Phi.

    Args:
        V: diagonal of the reversibility matrix, in the order of L.space
        D: SparseMatrix duality function on the unfused space
        pi: Measure on the fused space

    Returns:
        CheckReport named "rp_inter"; when a hypothesis fails the
        conclusion is not evaluated and ``details["stage"]`` is
        "hypotheses"
    """
    if lam.col_space.states != L.space.states or phi_k.row_space.states != L.space.states:
        raise DomainError("Lambda and Phi do not match the state space of L")
    params = dict(params or {})
    unfused_labels = L.space.labels()
    fused_labels = lam.row_space.labels()
    n_unfused = len(L.space)
    if any(v == 0 for v in V):
        raise DomainError("The reversibility matrix must be invertible")
    V_mat = SparseMatrix.diagonal(V)
    V_inv = SparseMatrix.diagonal([1 / Fraction(v) for v in V])
    pi_S = _row(lam.apply(pi.probabilities))
    projector = phi_k.matrix @ lam.matrix

    hypotheses = [
        compare_matrices("lambda_phi", lam.matrix @ phi_k.matrix, SparseMatrix.identity(len(fused_labels)),
                         fused_labels, fused_labels, params=params),
        compare_matrices("reversible", V_inv @ L.matrix @ V_mat, L.matrix.T,
                         unfused_labels, unfused_labels, params=params),
        compare_matrices("duality", L.matrix @ D, D @ L.matrix.T, unfused_labels, unfused_labels, params=params),
        compare_matrices("dual_stationary", pi_S @ D @ projector, pi_S @ D,
                         ["pi D"], unfused_labels, params=params),
    ]
    c = proportionality_constant(lam, phi_k)
    if c is None:
        sizes = fiber_sizes(phi_k)
        hypotheses.append(compare_matrices("lambda_multiple_of_phi_T", lam.matrix,
                                           phi_k.matrix.T.scale(Fraction(1, max(sizes))),
                                           fused_labels, unfused_labels, params=params))
        hypotheses[-1].details["fiber_sizes"] = sorted(set(sizes))
    else:
        params["c"] = c

    if not all(h.passed for h in hypotheses):
        report = combine("rp_inter", hypotheses, anchor=ANCHOR, regime="closed",
                         expect_fail=expect_fail, params=params)
        report.details["stage"] = "hypotheses"
        logger.info(f"rp_inter hypotheses fail: {report.details['failed_parts']}")
        return report

    Q = lam.matrix @ L.matrix @ phi_k.matrix
    D_tilde = lam.matrix @ D @ phi_k.matrix
    pi_row = pi.as_row()
    conclusion = compare_matrices("rp_inter_conclusion", pi_row @ Q @ D_tilde, pi_row @ D_tilde @ Q.T,
                                  ["pi Q D~"], fused_labels, anchor=ANCHOR, params=params)
    report = combine("rp_inter", hypotheses + [conclusion], anchor=ANCHOR, regime="closed",
                     expect_fail=expect_fail, params=params)
    report.details["stage"] = "conclusion"
    logger.debug(f"rp_inter on {n_unfused} unfused states: passed={report.passed}")
    return report
