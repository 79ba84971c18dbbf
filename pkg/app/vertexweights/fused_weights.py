"""
Fused dynamical vertex weights R_lm(j', k'; j, k) built from theta(z) = sin(pi z).

A plaquette has j' particles entering horizontally, k' vertically, j
leaving horizontally and k vertically, with j + k = j' + k'. Evaluation is
in complex doubles so the same code serves real and complex eta.
"""

import logging
from itertools import product

import numpy as np

from app.utils.errors import DomainError, SingularityError
from app.utils.reports import CheckReport, Witness, combine, write_csv

logger = logging.getLogger(__name__)

ANCHOR = "fused dynamical vertex weights"
GUARD = 1e-8
MAX_PATH_LENGTH = 12


def theta(z):
    return np.sin(np.pi * np.asarray(z, dtype=complex))


def _denominator(z):
    value = theta(z)
    if abs(value) < GUARD:
        raise SingularityError(f"theta({z}) = {value} is too close to zero")
    return value


def alpha_weight(lam, w, eta):
    return theta(w) * theta(lam + 2 * eta) / (_denominator(w - 2 * eta) * _denominator(lam))


def beta_weight(lam, w, eta):
    return theta(-w - lam) * theta(2 * eta) / (_denominator(w - 2 * eta) * _denominator(lam))


def alpha_beta(lam, w, eta, r):
    """
    (alpha^(r), beta^(r)) in closed form; alpha^(0) = 1 and beta^(0) = 0.

    Raises:
        SingularityError: when theta(w - 2 eta) or theta(lam) vanishes
    """
    if r < 0:
        raise DomainError(f"r must be non-negative, got {r}")
    if r == 0:
        return complex(1), complex(0)
    base = _denominator(w - 2 * eta) * _denominator(lam)
    alpha = theta(w + 2 * (r - 1) * eta) * theta(lam + 2 * r * eta) / base
    beta = theta(-w - lam - 2 * (r - 1) * eta) * theta(2 * r * eta) / base
    return complex(alpha), complex(beta)


def alpha_product(lam, w, eta, r):
    """alpha^(r) as the explicit product of shifted alphas"""
    value = complex(1)
    for i in range(r):
        value *= complex(alpha_weight(lam + 2 * i * eta, w + 2 * i * eta, eta))
    return value


def beta_product(lam, w, eta, r):
    """
    beta^(r) as the sum over the first step i < r that turns: alpha^(i)
    times the shifted single beta
    """
    value = complex(0)
    for i in range(r):
        value += alpha_product(lam, w, eta, i) * complex(beta_weight(lam + 2 * i * eta, w + 2 * i * eta, eta))
    return value


def _epsilon(kind, k, m, lam, w, eta):
    """a_+, b_+, a_-, b_- with superscript k; zero outside 0 <= k <= m"""
    if not 0 <= k <= m:
        return complex(0)
    if kind == "a+":
        return alpha_beta(lam, w, eta, k)[0]
    if kind == "b+":
        return alpha_beta(lam, w, eta, k)[1]
    if kind == "a-":
        return alpha_beta(-lam, w, eta, m - k)[0]
    return alpha_beta(-lam, w, eta, m - k)[1]


def path_words(l, j):
    """The binary words of length l and weight j"""
    if l > MAX_PATH_LENGTH:
        raise DomainError(f"Horizontal size l={l} exceeds {MAX_PATH_LENGTH}")
    return [word for word in product((0, 1), repeat=l) if sum(word) == j]


def _path_term(word, l, m, j_in, k_in, lam, w, eta):
    value = complex(1)
    p = 0
    h = 0
    cut = l - j_in
    for r, i in enumerate(word, start=1):
        shift = r - 1
        if r <= cut:
            kind = "b+" if i else "a+"
        else:
            kind = "a-" if i else "b-"
        value *= _epsilon(kind, k_in - p, m, lam - 2 * eta * h, w - 2 * shift * eta, eta)
        if value == 0:
            return value
        p += i if r <= cut else i - 1
        h += -1 if i else 1
    return value


def R(l, m, j_in, k_in, j, k, lam, w, eta):
    """
    R_lm(j', k'; j, k): the sum over horizontal paths with j particles of
    the l-fold epsilon products. Zero off the shell j + k = j' + k'.
    """
    for name, value, bound in (("j'", j_in, l), ("j", j, l), ("k'", k_in, m), ("k", k, m)):
        if not 0 <= value <= bound:
            raise DomainError(f"{name}={value} outside 0..{bound}")
    if j + k != j_in + k_in:
        return complex(0)
    return sum((_path_term(word, l, m, j_in, k_in, lam, w, eta) for word in path_words(l, j)), complex(0))


def weight_table(l, m, lam, w, eta):
    """{(j', k', j, k): R} over the conserving plaquettes"""
    table = {}
    for j_in, k_in in product(range(l + 1), range(m + 1)):
        for j in range(l + 1):
            k = j_in + k_in - j
            if 0 <= k <= m:
                table[(j_in, k_in, j, k)] = R(l, m, j_in, k_in, j, k, lam, w, eta)
    return table


def row_sums(table):
    sums = {}
    for (j_in, k_in, _, _), value in table.items():
        sums[(j_in, k_in)] = sums.get((j_in, k_in), 0) + value
    return sums


def check_stochasticity(l, m, lam, w, eta, tol=1e-10):
    """Every row (j', k') of the fused weights sums to 1"""
    sums = row_sums(weight_table(l, m, lam, w, eta))
    witnesses = [Witness(f"(j'={j_in}, k'={k_in})", "sum", f"{value:.12g}", "1")
                 for (j_in, k_in), value in sums.items() if abs(value - 1) > tol]
    report = CheckReport(name=f"stochasticity(l={l}, m={m})", passed=not witnesses, anchor=ANCHOR,
                         params={"l": l, "m": m, "lambda": lam, "w": w, "eta": eta},
                         witnesses=witnesses[:10], details={"rows": len(sums)})
    logger.info(f"R_{l}{m} stochasticity: passed={report.passed}")
    return report


def check_telescoping(r_max=5, points=10, seed=0, tol=1e-12):
    """Closed forms of alpha^(r) and beta^(r) against their products at random real points"""
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(points):
        lam, w, eta = rng.uniform(0.1, 0.4, size=3)
        for r in range(1, r_max + 1):
            closed_alpha, closed_beta = alpha_beta(lam, w, eta, r)
            explicit_alpha = alpha_product(lam, w, eta, r)
            scale = max(1.0, abs(closed_alpha), abs(closed_beta))
            for label, closed, explicit in (("alpha", closed_alpha, explicit_alpha),
                                            ("beta", closed_beta, beta_product(lam, w, eta, r))):
                passed = abs(closed - explicit) <= tol * scale
                reports.append(CheckReport(name=f"{label}_telescoping(r={r})", passed=passed, anchor=ANCHOR,
                                           params={"lambda": lam, "w": w, "eta": eta},
                                           witnesses=[] if passed else [Witness(label, r, str(closed), str(explicit))]))
    return combine("telescoping", reports, anchor=ANCHOR, params={"r_max": r_max, "seed": seed})


def export_weight_table(path, l, m, lam, w, eta):
    table = weight_table(l, m, lam, w, eta)
    sums = row_sums(table)
    rows = [(l, m, j_in, k_in, j, k, value.real, value.imag, sums[(j_in, k_in)].real)
            for (j_in, k_in, j, k), value in sorted(table.items())]
    write_csv(path, ["l", "m", "j_in", "k_in", "j", "k", "value_re", "value_im", "row_sum"], rows)
    return rows
