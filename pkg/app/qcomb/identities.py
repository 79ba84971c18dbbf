"""
The q-identities used by the fusion and dynamic constructions, as exact
checks. Each check returns a CheckReport whose ``details["residual"]`` is
LHS - RHS.
"""

import logging
from itertools import combinations

from app.utils.errors import DomainError, SingularityError
from app.utils.reports import CheckReport, Witness
from app.utils.sparse import fstr
from .qnumbers import q_binomial, q_binomial0, q_multinomial
from .permutations import YoungSubgroup, coset_reps, inversions

logger = logging.getLogger(__name__)


def _report(name, lhs, rhs, anchor, params):
    residual = lhs - rhs
    witnesses = [] if residual == 0 else [Witness("-", "-", fstr(lhs), fstr(rhs))]
    return CheckReport(name=name, passed=residual == 0, anchor=anchor, params=params,
                       witnesses=witnesses, details={"residual": fstr(residual)})


def _inv(x):
    if x == 0:
        raise SingularityError("vanishing denominator")
    return 1 / x


def decreasing_tuples(m, k):
    """All 0 <= x_k < ... < x_1 <= m-1, listed as (x_1, ..., x_k)"""
    for combo in combinations(range(m), k):
        yield tuple(reversed(combo))


def check_pascal(m, k, q):
    """Both Pascal rules for (m choose k)_q, 1 <= k <= m"""
    lhs1 = q_binomial0(m - 1, k - 1, q) + q ** k * q_binomial0(m - 1, k, q)
    lhs2 = q ** (m - k) * q_binomial0(m - 1, k - 1, q) + q_binomial0(m - 1, k, q)
    rhs = q_binomial(m, k, q)
    first = _report("pascal_lower", lhs1, rhs, "q-binomial Pascal rule", {"m": m, "k": k, "q": q})
    second = _report("pascal_upper", lhs2, rhs, "q-binomial Pascal rule (mirrored)", {"m": m, "k": k, "q": q})
    return first if not first.passed else second


def check_qbin(m, k, q):
    """sum over k-subsets of q^{sum x} = q^{k(k-1)/2} (m choose k)_q"""
    lhs = sum((q ** sum(x) for x in decreasing_tuples(m, k)), 0 * q)
    rhs = q ** (k * (k - 1) // 2) * q_binomial(m, k, q)
    return _report("qbin", lhs, rhs, "q-binomial theorem, subset form", {"m": m, "k": k, "q": q})


def check_qbin2(blocks, q):
    """sum over D_H of q^{inv} = q-multinomial(N; blocks)"""
    H = YoungSubgroup(blocks)
    lhs = sum((q ** inversions(s) for s in coset_reps(H)), 0 * q)
    rhs = q_multinomial(H.N, blocks[:-1], q)
    return _report("qbin2", lhs, rhs, "coset form of the q-multinomial", {"blocks": list(blocks), "q": q})


def check_qbin3(L, species_counts, q):
    """
    q^{-N(N-1)/2} sum_x q^{sum x} sum_{D_H} q^{inv} = (L; L-N, N_1, ..., N_n)_q
    """
    N = sum(species_counts)
    if N > L:
        raise DomainError(f"{N} particles do not fit on {L} sites")
    position_sum = sum((q ** sum(x) for x in decreasing_tuples(L, N)), 0 * q)
    if N:
        coset_sum = sum((q ** inversions(s) for s in coset_reps(YoungSubgroup([c for c in species_counts if c > 0]))), 0 * q)
    else:
        coset_sum = q ** 0
    lhs = q ** (-(N * (N - 1) // 2)) * position_sum * coset_sum
    rhs = q_multinomial(L, (L - N,) + tuple(species_counts[:-1]), q) if N else q ** 0
    return _report("qbin3", lhs, rhs, "triple-product q-multinomial identity",
                   {"L": L, "species": list(species_counts), "q": q})


def qabin_lhs(m, k, q, alpha):
    total = 0 * q
    for x in decreasing_tuples(m, k):
        term = q ** 0
        for l, xl in enumerate(x, start=1):
            term *= q ** xl * _inv(alpha + q ** (xl + 2 * l - 2)) * _inv(alpha + q ** (xl + 2 * l - 1))
        total += term
    return total


def qabin_rhs(m, k, q, alpha):
    denom = q ** 0
    for j in range(k - 1, 2 * k - 1):
        denom *= alpha + q ** j
    for j in range(m, m + k):
        denom *= alpha + q ** j
    return q ** (k * (k - 1) // 2) * q_binomial(m, k, q) * _inv(denom)


def check_qaBin(m, k, q, alpha):
    """
    The alpha-deformed q-binomial sum over 0 <= x_k < ... < x_1 <= m-1.

    Raises:
        DomainError: unless 1 <= k <= m
        SingularityError: if a factor alpha + q^j vanishes
    """
    if not 1 <= k <= m:
        raise DomainError(f"check_qaBin needs 1 <= k <= m, got m={m}, k={k}")
    return _report("qaBin", qabin_lhs(m, k, q, alpha), qabin_rhs(m, k, q, alpha),
                   "alpha-deformed q-binomial theorem", {"m": m, "k": k, "q": q, "alpha": alpha})


def prev_first(m, k, q, alpha):
    lhs = q_binomial0(m, k, q) * (alpha + q ** (m + k)) + \
        q ** (m - k + 1) * q_binomial0(m, k - 1, q) * (alpha + q ** (k - 1))
    rhs = q_binomial0(m + 1, k, q) * (alpha + q ** m)
    return lhs, rhs


def prev_second(m, k, q, alpha):
    lhs = q_binomial0(m - 1, k - 1, q) * (alpha + q ** (m + k - 1)) + \
        q ** k * q_binomial0(m - 1, k, q) * (alpha + q ** (k - 1))
    rhs = q_binomial0(m, k, q) * (alpha + q ** (2 * k - 1))
    return lhs, rhs


def prev1(m, k, q, alpha):
    lhs = 0 * q
    for y in range(k - 1, m):
        denom = q ** 0
        for j in range(y, y + k + 1):
            denom *= alpha + q ** j
        lhs += q ** y * q_binomial(y, k - 1, q) * _inv(denom)
    denom = alpha + q ** (k - 1)
    for j in range(m, m + k):
        denom *= alpha + q ** j
    rhs = q ** (k - 1) * q_binomial(m, k, q) * _inv(denom)
    return lhs, rhs


def prev2(n, q, alpha):
    lhs = sum((q ** r * _inv((alpha + q ** r) * (alpha + q ** (r + 1))) for r in range(n)), 0 * q)
    rhs = (1 - q ** n) * _inv((1 - q) * (alpha + 1) * (alpha + q ** n))
    return lhs, rhs


def check_prev_lemmas(m, k, n, q, alpha):
    """
    The three auxiliary lemmas behind the alpha-deformed q-binomial theorem:
    the two binomial-product identities at (m, k), the telescoping sum at
    (m, k) with m >= k >= 1, and the single-factor sum at n.
    """
    params = {"m": m, "k": k, "n": n, "q": q, "alpha": alpha}
    parts = [
        ("prev_first", prev_first(m, k, q, alpha)),
        ("prev_second", prev_second(m, k, q, alpha)),
        ("prev1", prev1(m, k, q, alpha)),
        ("prev2", prev2(n, q, alpha)),
    ]
    witnesses = [Witness(name, "-", fstr(lhs), fstr(rhs)) for name, (lhs, rhs) in parts if lhs != rhs]
    residuals = {name: fstr(lhs - rhs) for name, (lhs, rhs) in parts}
    passed = not witnesses
    if not passed:
        logger.warning(f"Lemma identities failed at {params}: {[w.row for w in witnesses]}")
    return CheckReport(name="prev_lemmas", passed=passed, anchor="auxiliary q-alpha lemmas",
                       params=params, witnesses=witnesses, details={"residual": residuals})
