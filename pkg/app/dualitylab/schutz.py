"""
The Schuetz sum over one block: S(Y) = sum_X F(X; Y) with

    F(X; Y) = q^{x_1 + ... + x_k} prod_i q^{-h_X(y_i) - y_i} 1{y_i in X},
    h_X(y) = #{v in X : v >= y},

X running over the k-subsets of {0, ..., m-1}. S(Y) only depends on |Y|.
"""

import logging
from fractions import Fraction
from itertools import combinations

from app.qcomb.qnumbers import as_rational, q_binomial
from app.stationarymeasures.measures import pi_ms
from app.statespace.enumeration import enumerate_lattice
from app.utils.errors import DomainError
from app.utils.reports import combine, scalar_report
from .checks import check_stationary_dual
from .functions import d_sch
from .matrices import DualityMatrix

logger = logging.getLogger(__name__)

ANCHOR = "Schuetz sum independence"


def _validate(positions, m, what):
    positions = tuple(positions)
    if any(a <= b for a, b in zip(positions, positions[1:])):
        raise DomainError(f"{what} must be strictly decreasing, got {positions}")
    if positions and not (0 <= positions[-1] and positions[0] <= m - 1):
        raise DomainError(f"{what} = {positions} leaves the block 0..{m - 1}")
    return positions


def schutz_weight(X, Y, q):
    """F(X; Y) for strictly decreasing X and Y"""
    q = as_rational(q)
    members = set(X)
    value = q ** sum(X)
    for y in Y:
        if y not in members:
            return Fraction(0)
        value *= q ** (-sum(1 for v in X if v >= y) - y)
    return value


def schutz_sum(Y, k, m, q):
    """S(Y) summed over every k-subset X of {0, ..., m-1}"""
    Y = _validate(Y, m, "Y")
    if not len(Y) <= k <= m:
        raise DomainError(f"Need |Y| <= k <= m, got |Y|={len(Y)}, k={k}, m={m}")
    q = as_rational(q)
    return sum((schutz_weight(tuple(sorted(X, reverse=True)), Y, q) for X in combinations(range(m), k)),
               Fraction(0))


def schutz_closed_form(l, k, m, q):
    """q^{k(k-1)/2} binom(m, k)_q q^{-lk} binom(k, l)_q / binom(m, l)_q"""
    q = as_rational(q)
    empty = q ** (k * (k - 1) // 2) * q_binomial(m, k, q)
    return empty * q ** (-l * k) * q_binomial(k, l, q) / q_binomial(m, l, q)


def nodep_ratio(l, k, m, q, first_unit=0):
    """
    q^{-l m_z} q^{-l(k-1)} binom(k, l)_q / binom(m, l)_q with m_z the unit
    sites left of the block. S(Y) / S(empty) is this value times q^{-l}.
    """
    q = as_rational(q)
    return q ** (-l * first_unit - l * (k - 1)) * q_binomial(k, l, q) / q_binomial(m, l, q)


def check_S_independence(m, k, q):
    """Every Y with |Y| <= k gives the closed-form value of S"""
    q = as_rational(q)
    reports = []
    empty = schutz_sum((), k, m, q)
    for l in range(k + 1):
        expected = schutz_closed_form(l, k, m, q)
        for Y in combinations(range(m - 1, -1, -1), l):
            reports.append(scalar_report(f"S{Y}", schutz_sum(Y, k, m, q), expected, anchor=ANCHOR))
        reports.append(scalar_report(f"nodep(l={l})", expected / empty, q ** (-l) * nodep_ratio(l, k, m, q),
                                     anchor=ANCHOR))
    report = combine("schutz_independence", reports, anchor=ANCHOR, regime="closed",
                     params={"m": m, "k": k, "q": q})
    logger.info(f"S independence m={m}, k={k}: passed={report.passed}")
    return report


def check_shift_step(m, k, q):
    """S(Y) = S(Z) when Z moves one y_i to y_i - 1 and stays strictly decreasing"""
    q = as_rational(q)
    reports = []
    for l in range(1, k + 1):
        for Y in combinations(range(m - 1, -1, -1), l):
            for i, y in enumerate(Y):
                if y == 0 or y - 1 in Y:
                    continue
                Z = Y[:i] + (y - 1,) + Y[i + 1:]
                reports.append(scalar_report(f"shift{Y}->{Z}", schutz_sum(Y, k, m, q), schutz_sum(Z, k, m, q),
                                             anchor=ANCHOR))
    return combine("schutz_shift_step", reports, anchor=ANCHOR, regime="closed", params={"m": m, "k": k, "q": q})


def check_stationary_schutz(m, k, l, q):
    """
    The same constancy seen through duality: under the stationary measure of
    closed ASEP_{1,q} with k particles on m sites, the mean of D_Sch(., Y) does
    not depend on the l-particle configuration Y.
    """
    q = as_rational(q)
    pi = pi_ms(m, 1, q, sector=(k,))
    duals = enumerate_lattice(m, 1, (l,))
    D = DualityMatrix.from_function(d_sch, pi.space, duals, name="D_Sch", q=q)
    return check_stationary_dual(pi, D, name=f"stationary_schutz(k={k}, l={l})", params={"m": m, "q": q})
