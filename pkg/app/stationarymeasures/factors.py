"""
Closed forms for the law of the down-step set X of a height path of
length m started from the right endpoint height 0, and the normalizer
identities that go with them.

With beta = alpha / q and A = beta q^m, for X = {x_1 > ... > x_k}

    P(X) = (-1/beta; q)_{2k-m} prod_l q^{x_l + 2(l-1)} A
                                      / ((A + q^{x_l+2l-2})(A + q^{x_l+2l-1}))

where the Pochhammer symbol uses the reflection convention for a negative
index.
"""

import logging
from fractions import Fraction

from app.qcomb.identities import qabin_rhs
from app.qcomb.qnumbers import as_rational, q_binomial, q_binomial0, q_pochhammer_std
from app.statespace.heights import down_steps
from app.utils.errors import DomainError, SingularityError
from app.utils.reports import CheckReport, Witness, combine, scalar_report
from app.utils.sparse import fstr
from .height_measure import dyn_height_measure

logger = logging.getLogger(__name__)

CONDITIONALS = ("last_zero", "last_positive", "first_top", "first_below_top")


def _inv(x):
    if x == 0:
        raise SingularityError("Vanishing denominator in a closed-form factor")
    return 1 / x


def _prefactor(m, k, q, alpha):
    beta = alpha / q
    if beta == 0:
        raise SingularityError("The closed forms need alpha != 0")
    return q_pochhammer_std(-1 / beta, q, 2 * k - m), beta * q ** m


def factors_pmf(X, q, alpha, m):
    """
    P(X_s = X) for a path of length m with right endpoint height 0

    Args:
        X: set of down-step sites in 0..m-1
    """
    q, alpha = as_rational(q), as_rational(alpha)
    x = sorted(set(X), reverse=True)
    if len(x) != len(list(X)) or any(not 0 <= v < m for v in x):
        raise DomainError(f"{tuple(X)} is not a set of sites in 0..{m - 1}")
    k = len(x)
    result, A = _prefactor(m, k, q, alpha)
    for l, xl in enumerate(x, start=1):
        result *= q ** (xl + 2 * (l - 1)) * A * _inv((A + q ** (xl + 2 * l - 2)) * (A + q ** (xl + 2 * l - 1)))
    return result


def factors_sector(k, q, alpha, m):
    """P(|X_s| = k), summed in closed form through the alpha-deformed q-binomial theorem"""
    q, alpha = as_rational(q), as_rational(alpha)
    if not 0 <= k <= m:
        raise DomainError(f"Need 0 <= k <= m, got k={k}, m={m}")
    prefactor, A = _prefactor(m, k, q, alpha)
    return prefactor * A ** k * q ** (k * (k - 1)) * qabin_rhs(m, k, q, A)


def boundary_conditionals(k, q, alpha, m):
    """
    Conditional laws of the extreme down-steps given |X| = k.

    Returns:
        dict with "last_zero" = P(x_k = 0), "last_positive" = P(x_k > 0),
        "first_top" = P(x_1 = m-1) and "first_below_top" = P(x_1 < m-1)
    """
    q, alpha = as_rational(q), as_rational(alpha)
    if not 1 <= k <= m:
        raise DomainError(f"Need 1 <= k <= m, got k={k}, m={m}")
    A = alpha / q * q ** m
    total = q_binomial(m, k, q)
    return {
        "last_zero": q_binomial0(m - 1, k - 1, q) * (A + q ** (m + k - 1))
        * _inv(total * (A + q ** (2 * k - 1))),
        "last_positive": q_binomial0(m - 1, k, q) * q ** k * (A + q ** (k - 1))
        * _inv(total * (A + q ** (2 * k - 1))),
        "first_top": q ** (m - k) * q_binomial0(m - 1, k - 1, q) * (A + q ** (k - 1))
        * _inv(total * (A + q ** (m - 1))),
        "first_below_top": q_binomial0(m - 1, k, q) * (A + q ** (m + k - 1))
        * _inv(total * (A + q ** (m - 1))),
    }


def down_step_law(q, alpha, m):
    """Pushforward of the height measure (right endpoint 0) under s -> X_s"""
    law = {}
    for path, p in dyn_height_measure(as_rational(q), as_rational(alpha), 0, m).items():
        key = down_steps(path)
        law[key] = law.get(key, Fraction(0)) + p
    return law


def _dict_report(name, lhs, rhs, anchor, params):
    witnesses = []
    failed = 0
    for key in sorted(set(lhs) | set(rhs)):
        a, b = lhs.get(key, 0), rhs.get(key, 0)
        if a != b:
            failed += 1
            if len(witnesses) < 5:
                witnesses.append(Witness(str(key), "-", fstr(a), fstr(b)))
    return CheckReport(name=name, passed=failed == 0, anchor=anchor, params=params,
                       witnesses=witnesses, details={"entries_checked": len(set(lhs) | set(rhs)),
                                                     "entries_failed": failed})


def check_factors_pmf(q, alpha, m):
    """Closed-form P(X) against the enumerated pushforward, every X"""
    law = down_step_law(q, alpha, m)
    closed = {x: factors_pmf(x, q, alpha, m) for x in law}
    return _dict_report("factors_pmf", closed, law, "product formula for the down-step set",
                        {"q": q, "alpha": alpha, "m": m})


def check_factors_sector(q, alpha, m):
    law = down_step_law(q, alpha, m)
    by_size = {}
    for x, p in law.items():
        by_size[len(x)] = by_size.get(len(x), Fraction(0)) + p
    closed = {k: factors_sector(k, q, alpha, m) for k in range(m + 1)}
    return _dict_report("factors_sector", closed, by_size, "law of the number of down-steps",
                        {"q": q, "alpha": alpha, "m": m})


def check_boundary_conditionals(q, alpha, m):
    law = down_step_law(q, alpha, m)
    reports = []
    for k in range(1, m + 1):
        sector = {x: p for x, p in law.items() if len(x) == k}
        weight = sum(sector.values(), Fraction(0))
        exact = {
            "last_zero": sum((p for x, p in sector.items() if x[0] == 0), Fraction(0)) / weight,
            "first_top": sum((p for x, p in sector.items() if x[-1] == m - 1), Fraction(0)) / weight,
        }
        exact["last_positive"] = 1 - exact["last_zero"]
        exact["first_below_top"] = 1 - exact["first_top"]
        reports.append(_dict_report(f"boundary_conditionals[k={k}]", boundary_conditionals(k, q, alpha, m),
                                    exact, "conditional laws of the extreme down-steps",
                                    {"q": q, "alpha": alpha, "m": m, "k": k}))
    return combine("boundary_conditionals", reports, anchor="conditional laws of the extreme down-steps",
                   params={"q": q, "alpha": alpha, "m": m})


def z_normalizer(k, m, q, alpha):
    """
    Z_{k,m} = binom(m, k)_q / (prod_{j=m-2k+2}^{m-k+1} (1 + alpha q^j)
                                prod_{j=0}^{k-1} (1 + q^j / alpha))
    """
    denominator = Fraction(1)
    for j in range(m - 2 * k + 2, m - k + 2):
        denominator *= 1 + alpha * q ** j
    for j in range(k):
        denominator *= 1 + q ** j / alpha
    return q_binomial(m, k, q) * _inv(denominator)


def check_factors_ratios(k, l, m, q, alpha):
    """
    The two ratio identities of the normalizer, at fixed alpha and with
    alpha shifted to alpha q^{-l}. The fixed-alpha product runs over
    consecutive exponents m-2k+2, ..., m-2k+l+1.
    """
    q, alpha = as_rational(q), as_rational(alpha)
    if not 0 <= l <= k <= m:
        raise DomainError(f"Need 0 <= l <= k <= m, got l={l}, k={k}, m={m}")
    params = {"k": k, "l": l, "m": m, "q": q, "alpha": alpha}
    binomials = q_binomial(m - l, k - l, q) / q_binomial(m, k, q)

    same = binomials
    for j in range(m - 2 * k + 2, m - 2 * k + l + 2):
        same *= 1 + alpha * q ** j
    for i in range(1, l + 1):
        same *= 1 + q ** (k - i) / alpha
    first = scalar_report("z_ratio_fixed_alpha",
                          z_normalizer(k - l, m - l, q, alpha) / z_normalizer(k, m, q, alpha), same,
                          params=params)

    shifted = binomials
    for j in range(l):
        shifted *= 1 + q ** j / alpha
    for j in range(m - k - l + 2, m - k + 2):
        shifted *= 1 + alpha * q ** j
    second = scalar_report("z_ratio_shifted_alpha",
                           z_normalizer(k - l, m - l, q, alpha * q ** (-l)) / z_normalizer(k, m, q, alpha),
                           shifted, params=params)
    return combine("factors_ratios", [first, second], anchor="normalizer ratio identities", params=params)


def check_shift(q, alpha, h, m):
    """
    Path by path, the measure with endpoint h equals the endpoint-0
    measure at alpha q^{-h} after lowering the path by h
    """
    q, alpha = as_rational(q), as_rational(alpha)
    lifted = dyn_height_measure(q, alpha, h, m)
    base = dyn_height_measure(q, alpha * q ** (-h), 0, m)
    moved = {tuple(v + h for v in path): p for path, p in base.items()}
    return _dict_report("shift", lifted, moved, "endpoint shift of the height measure",
                        {"q": q, "alpha": alpha, "h": h, "m": m})
