"""
Intertwiners between dual processes: the marking kernel Q, the diagonal
P and the charge reversal Pi, and the dualities they generate from the
known ones.
"""

import logging
from itertools import combinations

from app.fusionmaps.kernels import Kernel
from app.generators.exclusion import asep
from app.generators.transforms import space_reverse
from app.qcomb.qnumbers import as_rational
from app.statespace.enumeration import enumerate_lattice
from app.utils.errors import DomainError
from app.utils.reports import combine, compare_matrices
from app.utils.sparse import SparseMatrix
from .checks import check_duality
from .functions import (
    bar_d_bcs, d_bcs, d_kua, d_sch, dual_positions, newdual_indicator_sum, newdual_occupied,
    newdual_reflected_sum, newdual_sum, site_counts,
)
from .matrices import CLOSED, INTERIOR, DualityMatrix, regime_mask

logger = logging.getLogger(__name__)

ANCHOR = "multi-species dualities from intertwiners"


def q_kernel(L, r, r_tilde, q):
    """
    Q(Y, Y~) = q^{-(i_1 + ... + i_r~)} 1{Y~ subset of Y}, with i the ranks
    (1 = rightmost) of the kept particles of Y.

    Returns:
        Kernel from the r-particle words on L sites to the r~-particle words
    """
    if not 0 <= r_tilde <= r:
        raise DomainError(f"Need 0 <= r~ <= r, got r~={r_tilde}, r={r}")
    q = as_rational(q)
    rows = enumerate_lattice(L, 1, (r,))
    cols = enumerate_lattice(L, 1, (r_tilde,))
    matrix = SparseMatrix(len(rows), len(cols))
    for i, word in enumerate(rows):
        positions = dual_positions(word)
        for ranks in combinations(range(1, r + 1), r_tilde):
            kept = [0] * L
            for rank in ranks:
                kept[positions[rank - 1]] = 1
            matrix[i, cols.index(tuple(kept))] = q ** (-sum(ranks))
    return Kernel(rows, cols, matrix, f"Q(r={r}, r~={r_tilde})")


def p_diagonal(space, q, offset=0):
    """Diagonal P(x, x) = q^{-(x_1 + ... + x_N)} in lattice coordinates"""
    q = as_rational(q)
    return SparseMatrix.diagonal([q ** (-sum((x + offset) * c for x, c in enumerate(site_counts(s))))
                                  for s in space])


def charge_reversal(space):
    """Pi(s, s') = 1{s'(x) = 1 - s(x) for all x} on one-species words"""
    matrix = SparseMatrix(len(space), len(space))
    for i, word in enumerate(space):
        if any(c not in (0, 1) for c in word):
            raise DomainError(f"Charge reversal needs one-species words, got {word}")
        matrix[i, space.index(tuple(1 - c for c in word))] = 1
    return Kernel(space, space, matrix, "Pi")


def check_q_intertwining(L, r, r_tilde, q):
    """Q L^(r~) = L^(r) Q for ASEP_{1,q} on a closed segment"""
    q = as_rational(q)
    Q = q_kernel(L, r, r_tilde, q)
    big = asep(L, 1, q, sector=(r,))
    small = asep(L, 1, q, sector=(r_tilde,))
    return compare_matrices("q_intertwining", Q.matrix @ small.matrix, big.matrix @ Q.matrix,
                            big.space.labels(), small.space.labels(), anchor=ANCHOR,
                            params={"L": L, "r": r, "r~": r_tilde, "q": q})


def check_p_intertwining(L, q, r, margin=2):
    """P L_{q,1} = L_{1,q} P on interior entries of the r-particle sector"""
    q = as_rational(q)
    forward = asep(L, 1, q, sector=(r,))
    backward = space_reverse(forward)
    P = p_diagonal(forward.space, q)
    mask = regime_mask(forward.space, forward.space, INTERIOR, margin, L)
    return compare_matrices("p_intertwining", P @ backward.matrix, forward.matrix @ P,
                            forward.space.labels(), forward.space.labels(), mask=mask, anchor=ANCHOR,
                            regime=INTERIOR, params={"L": L, "r": r, "q": q, "margin": margin})


def _table(function, left, right, **params):
    return DualityMatrix.from_function(function, left, right, **params).matrix


def check_newdual(L, q, r, r_tilde, margin=2):
    """
    The four families obtained from the known ASEP dualities by Q, P and
    Pi, each compared with its closed form and checked as a duality.

        sum        sum_I prod q^{N - i + 1}          ASEP_{q,1} ~ ASEP_{1,q}, interior
        reflected  q^{-sum x} sum_I prod q^{-N + i - 1}  ASEP_{1,q} ~ ASEP_{1,q}, interior
        occupied   prod 1{s = 1} q^{-N}              ASEP_{1,q} ~ ASEP_{q,1}, interior
        marked     indicator sums, occupied (interior) and vacant (closed)
    """
    q = as_rational(q)
    params = {"L": L, "q": q, "r": r, "r~": r_tilde}
    full = enumerate_lattice(L)
    ltr = asep(L, 1, q)
    rtl = space_reverse(ltr)
    dual_ltr = asep(L, 1, q, sector=(r,))
    dual_rtl = space_reverse(dual_ltr)
    Q = q_kernel(L, r, r_tilde, q)
    Q_inverse_q = q_kernel(L, r, r_tilde, 1 / q)
    small = Q.col_space
    dual = dual_ltr.space
    scale = q ** (-r_tilde)
    reports = []

    summed = DualityMatrix.from_function(newdual_sum, full, dual, name="newdual_sum", regime=INTERIOR,
                                         margin=margin, q=q, r_tilde=r_tilde)
    composed = _table(bar_d_bcs, full, small, q=q) @ Q.matrix.T
    reports.append(compare_matrices("sum_equals_barD_Q", composed.scale(1 / scale), summed.matrix,
                                    anchor=ANCHOR, params=params))
    reports.append(check_duality(rtl, summed, dual_ltr, name="sum_duality", anchor=ANCHOR))

    reflected = DualityMatrix.from_function(newdual_reflected_sum, full, dual, name="newdual_reflected",
                                            regime=INTERIOR, margin=margin, q=q, r_tilde=r_tilde)
    composed = _table(d_bcs, full, small, q=q) @ Q_inverse_q.matrix.T @ p_diagonal(dual, q)
    reports.append(compare_matrices("reflected_equals_D_Q_P", composed.scale(scale), reflected.matrix,
                                    anchor=ANCHOR, params=params))
    reports.append(check_duality(ltr, reflected, dual_ltr, name="reflected_duality", anchor=ANCHOR))

    occupied = DualityMatrix.from_function(newdual_occupied, full, dual, name="newdual_occupied",
                                           regime=INTERIOR, margin=margin, q=q)
    composed = _table(d_sch, full, dual, q=q) @ _inverse_diagonal(p_diagonal(dual, q))
    reports.append(compare_matrices("occupied_equals_D_Sch_P_inverse", composed, occupied.matrix,
                                    anchor=ANCHOR, params=params))
    reports.append(check_duality(ltr, occupied, dual_rtl, name="occupied_duality", anchor=ANCHOR))

    marked = DualityMatrix.from_function(newdual_indicator_sum, full, dual, name="newdual_marked_occupied",
                                         regime=INTERIOR, margin=margin, q=q, r_tilde=r_tilde, occupied=True)
    reports.append(check_duality(rtl, marked, dual_ltr, name="marked_occupied_duality", anchor=ANCHOR))

    vacant = DualityMatrix.from_function(newdual_indicator_sum, full, dual, name="newdual_marked_vacant",
                                         regime=CLOSED, q=q, r_tilde=r_tilde, occupied=False)
    composed = _table(d_kua, full, small, q=1 / q) @ Q.matrix.T
    reports.append(compare_matrices("vacant_equals_D_Kua_Q", composed.scale(1 / scale), vacant.matrix,
                                    anchor=ANCHOR, params=params))
    reports.append(check_duality(rtl, vacant, dual_ltr, name="marked_vacant_duality", anchor=ANCHOR))

    report = combine("newdual", reports, anchor=ANCHOR, regime=INTERIOR, params=params)
    logger.info(f"newdual families at r={r}, r~={r_tilde}: failed={report.details['failed_parts']}")
    return report


def _inverse_diagonal(matrix):
    return SparseMatrix.diagonal([1 / matrix[i, i] for i in range(matrix.n_rows)])


def check_charge_reversal_involution(L):
    full = enumerate_lattice(L)
    Pi = charge_reversal(full)
    return compare_matrices("charge_reversal_involution", Pi.matrix @ Pi.matrix,
                            SparseMatrix.identity(len(full)), anchor=ANCHOR, params={"L": L})
