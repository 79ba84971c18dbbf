"""
Continuous-time limits of the dynamical q-Hahn weights: the rates
Gamma(j | i) and their small-mu limit Psi, set against the q-Boson limit
of dynamic ASEP(q, m).
"""

import logging

from app.generators.dynamic import qboson_limit_down_rate
from app.qcomb.qnumbers import q_pochhammer
from app.utils.errors import DomainError
from app.utils.reports import combine, scalar_report
from .q_jackson import q_jackson_phi

logger = logging.getLogger(__name__)

ANCHOR = "dynamical q-Boson weights"


def hahn_phi(q, lam, mu, kappa, j, i):
    """phi in the variables lambda = b / a and mu = b"""
    return q_jackson_phi(q, mu / lam, mu, kappa, j, i)


def qhahn_rates(q, mu, kappa, i, j):
    """Gamma(j | i) = -d/d lambda phi(j | i) at lambda = 1"""
    if not 0 <= j <= i:
        raise DomainError(f"Need 0 <= j <= i, got j={j}, i={i}")
    if q == 1:
        raise DomainError("q = 1 is excluded")
    if j == 0:
        return mu * sum((q ** (i + n) * kappa - q ** n) / ((1 - mu * q ** (i + n) * kappa) * (1 - mu * q ** n))
                        for n in range(i))
    value = mu ** j * q_pochhammer(q, q, i) / (q_pochhammer(q, q, j) * q_pochhammer(q, q, i - j))
    value *= q_pochhammer(q, q, j - 1) * q_pochhammer(mu, q, i - j) / q_pochhammer(mu, q, i)
    value *= q_pochhammer(q ** i * mu * kappa, q, i - j) * q_pochhammer(q ** (i - j + 1) * kappa, q, j)
    value /= q_pochhammer(q ** (i - j) * mu * kappa, q, i - j) * q_pochhammer(
        q ** (2 * i - 2 * j + 1) * mu * kappa, q, j)
    return value


def qboson_limit(q, kappa, i):
    """(Psi(0), Psi(1))"""
    common = (1 - q ** i * kappa) / (1 - q)
    return (q ** i - 1) * common, (1 - q ** i) * common


def check_rates_derivative(q, mu, kappa, i_max=3, step=1e-6, tol=1e-5):
    """Gamma against a central difference of phi in lambda at lambda = 1"""
    reports = []
    for i in range(i_max + 1):
        for j in range(i + 1):
            numeric = -(hahn_phi(q, 1 + step, mu, kappa, j, i) - hahn_phi(q, 1 - step, mu, kappa, j, i)) / (2 * step)
            reports.append(scalar_report(f"gamma({j}|{i})", qhahn_rates(q, mu, kappa, i, j), numeric,
                                         anchor=ANCHOR, tol=tol))
    return combine("qhahn_derivative", reports, anchor=ANCHOR, params={"q": q, "mu": mu, "kappa": kappa})


def check_qboson_limit(q, kappa, i_max=4, mu=1e-6, tol=1e-5):
    """Gamma / mu at small mu against Psi; rates with j >= 2 vanish"""
    reports = []
    for i in range(i_max + 1):
        psi = qboson_limit(q, kappa, i)
        for j in range(i + 1):
            expected = psi[j] if j < 2 else 0
            reports.append(scalar_report(f"psi({j}|{i})", qhahn_rates(q, mu, kappa, i, j) / mu, expected,
                                         anchor=ANCHOR, tol=tol * max(1, abs(expected))))
    return combine("qboson_limit", reports, anchor=ANCHOR, params={"q": q, "kappa": kappa, "mu": mu})


def check_dynamic_mismatch(q, alpha, s, i=1):
    """
    The q-Boson limit of dynamic ASEP(q, m) does not reproduce Psi(1) with
    kappa = alpha; registered as expected to fail.
    """
    rate = float(qboson_limit_down_rate(q, alpha, s))
    psi = qboson_limit(float(q), float(alpha), i)[1]
    return scalar_report("dynamic_qboson_vs_psi", rate, psi, anchor=ANCHOR, tol=1e-9, expect_fail=True,
                         params={"q": q, "alpha": alpha, "s": s, "i": i})
