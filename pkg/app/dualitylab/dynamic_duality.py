"""
Dualities of the dynamic processes on height paths and their degenerations,
plus the q-Boson propositions and the product ansatz that fails to give a
dynamic ASEP duality.

Heights follow s(x) = 2 N_x + x, so a path with N particles on L sites runs
from 2N down to L.
"""

import logging
from fractions import Fraction
from itertools import combinations

from app.generators.dynamic import dynamic_asep, dynamic_ssep
from app.generators.exclusion import asep, asep_qm, qboson
from app.generators.transforms import space_reverse
from app.qcomb.qnumbers import as_rational
from app.statespace.enumeration import enumerate_lattice
from app.statespace.heights import down_steps, enumerate_height_paths, word_of_path
from app.utils.errors import DomainError
from app.utils.reports import combine, compare_matrices, scalar_report
from app.utils.sparse import SparseMatrix
from .checks import check_duality
from .functions import (
    asep_qm_newdual_sum, bc_limit_infinite, bc_limit_zero, d_bc, d_bc_scaled, d_bcs_prime, dual_positions,
    dynamic_ssep_function, dynamic_ssep_limit, newdual_reflected_sum, newdual_sum, qboson_product,
)
from .known import dual_asep
from .matrices import INTERIOR, DualityMatrix

logger = logging.getLogger(__name__)

ANCHOR = "dynamic dualities"


def _heights(L, N):
    return enumerate_height_paths((1,) * L, 2 * N, L)


def check_dynamic_duality_BC(L, q, alpha, N, max_dual=1, margin=2):
    """Dynamic ASEP with N particles against ASEP_{1,q} under D_BC, interior entries"""
    q = as_rational(q)
    alpha = as_rational(alpha)
    original = dynamic_asep(L, q, alpha, 2 * N, L)
    dual = dual_asep(L, q, max_dual)
    D = DualityMatrix.from_function(d_bc, original.space, dual.space, name="D_BC", regime=INTERIOR,
                                    margin=margin, n_sites=L, q=q, alpha_inv=1 / alpha)
    return check_duality(original, D, dual, name=f"dynamic_bc(N={N})", anchor=ANCHOR,
                         params={"L": L, "alpha": alpha, "max_dual": max_dual})


def _on_words(function):
    def lifted(s, t, **params):
        return function(word_of_path(s), t, **params)
    return lifted


def check_bc_limits(L, q, N, max_dual=2, margin=2):
    """
    The alpha -> 0 and alpha -> infinity limits of D_BC.

    After dividing out constants the limits are bc_limit_zero and
    bc_limit_infinite; both expand into the marked sums, and each is a
    duality in its own right (the first with the space-reversed process).
    """
    q = as_rational(q)
    params = {"L": L, "q": q, "N": N}
    heights = _heights(L, N)
    forward = asep(L, 1, q)
    backward = space_reverse(forward)
    reports = []
    for r in range(1, max_dual + 1):
        duals = enumerate_lattice(L, 1, (r,))
        sign = (-1) ** r
        triangle = q ** (r * (r - 1) // 2)

        def table(function, **kwargs):
            return DualityMatrix.from_function(function, heights, duals, **kwargs).matrix

        zero = table(_on_words(bc_limit_zero), q=q)
        infinite = table(_on_words(bc_limit_infinite), q=q)
        reports.append(compare_matrices(f"alpha_zero(r={r})", table(d_bc_scaled, q=q, alpha=0),
                                        zero.scale(sign * triangle), anchor=ANCHOR, params=params))
        reports.append(compare_matrices(f"alpha_infinite(r={r})", table(d_bc, q=q, alpha_inv=0),
                                        infinite.scale(sign), anchor=ANCHOR, params=params))

        summed = sum((table(_on_words(newdual_sum), q=q, r_tilde=j).scale((-1) ** j) for j in range(r + 1)),
                     start=SparseMatrix(len(heights), len(duals)))
        reflected = sum((table(_on_words(newdual_reflected_sum), q=q, r_tilde=j).scale((-1) ** (r - j))
                         for j in range(r + 1)), start=SparseMatrix(len(heights), len(duals)))
        reports.append(compare_matrices(f"zero_expansion(r={r})", zero, summed.scale(triangle),
                                        anchor=ANCHOR, params=params))
        reports.append(compare_matrices(f"infinite_expansion(r={r})", infinite, reflected,
                                        anchor=ANCHOR, params=params))

        dual = asep(L, 1, q, sector=(r,))
        D_zero = DualityMatrix.from_function(bc_limit_zero, backward.space, duals, name="bc_limit_zero",
                                             regime=INTERIOR, margin=margin, q=q)
        D_infinite = DualityMatrix.from_function(bc_limit_infinite, forward.space, duals,
                                                 name="bc_limit_infinite", regime=INTERIOR, margin=margin, q=q)
        reports.append(check_duality(backward, D_zero, dual, name=f"zero_limit_duality(r={r})", anchor=ANCHOR))
        reports.append(check_duality(forward, D_infinite, dual, name=f"infinite_limit_duality(r={r})",
                                     anchor=ANCHOR))
    logger.debug(f"Checked D_BC limits on {len(heights)} paths")
    return combine("bc_limits", reports, anchor=ANCHOR, regime=INTERIOR, params=params)


def check_dynamic_ssep_duality(L, lam, N, max_dual=1, margin=2):
    """Dynamic SSEP against SSEP, interior entries"""
    lam = as_rational(lam)
    original = dynamic_ssep(L, lam, 2 * N, L)
    dual = dual_asep(L, Fraction(1), max_dual)
    D = DualityMatrix.from_function(dynamic_ssep_function, original.space, dual.space,
                                    name="D_dynamic_SSEP", regime=INTERIOR, margin=margin, n_sites=L, lam=lam)
    return check_duality(original, D, dual, name=f"dynamic_ssep(N={N})", anchor=ANCHOR,
                         params={"L": L, "lambda": lam, "max_dual": max_dual})


def check_ssep_limit(L, N, max_dual=2, lam=-10 ** 6, margin=2, tol=Fraction(1, 1000)):
    """
    As lambda -> -infinity the dynamic SSEP function, divided by
    (-lambda)^{N'}, tends to prod_k ((k-1) - N_{x_k}); at one dual particle
    that is D'_BCS, an SSEP self-duality away from the ends.
    """
    lam = as_rational(lam)
    params = {"L": L, "N": N, "lambda": lam}
    heights = _heights(L, N)
    reports = []
    for r in range(1, max_dual + 1):
        duals = enumerate_lattice(L, 1, (r,))
        scaled = DualityMatrix.from_function(dynamic_ssep_function, heights, duals, lam=lam).matrix
        limit = DualityMatrix.from_function(dynamic_ssep_limit, heights, duals).matrix
        reports.append(compare_matrices(f"lambda_scaling(r={r})", scaled.scale(1 / (-lam) ** r), limit,
                                        tol=tol, anchor=ANCHOR, params=params))
    ssep = asep(L, 1, Fraction(1))
    dual = dual_asep(L, Fraction(1), max_dual)
    D = DualityMatrix.from_function(d_bcs_prime, ssep.space, dual.space, name="D_BCS_prime",
                                    regime=INTERIOR, margin=margin)
    reports.append(check_duality(ssep, D, dual, name="bcs_prime_duality", anchor=ANCHOR))
    one = enumerate_lattice(L, 1, (1,))
    reports.append(compare_matrices("one_particle_limit",
                                    DualityMatrix.from_function(dynamic_ssep_limit, heights, one).matrix,
                                    DualityMatrix.from_function(_on_words(d_bcs_prime), heights, one).matrix,
                                    anchor=ANCHOR, params=params))
    return combine("ssep_limit", reports, anchor=ANCHOR, regime=INTERIOR, params=params)


def check_qboson_propositions(L, q, K, max_dual=2, margin=1):
    """
    The space-reversed q-Boson against the q-Boson with the marked sums and
    the product prod_k (q^{k-1} - q^{N_{x_k}}). Both sides are kept in
    fixed-particle sectors below their truncation cap.
    """
    q = as_rational(q)
    params = {"L": L, "q": q, "K": K}
    original = space_reverse(qboson(L, q, cap=K, sector=(K,)))
    reports = []
    for r in range(1, max_dual + 1):
        dual = qboson(L, q, cap=r, sector=(r,))
        D = DualityMatrix.from_function(qboson_product, original.space, dual.space, name="qboson_product",
                                        regime=INTERIOR, margin=margin, q=q)
        reports.append(check_duality(original, D, dual, name=f"qboson_product(r={r})", anchor=ANCHOR))
        for r_tilde in range(1, r + 1):
            D = DualityMatrix.from_function(newdual_sum, original.space, dual.space, name="qboson_newdual",
                                            regime=INTERIOR, margin=margin, q=q, r_tilde=r_tilde)
            reports.append(check_duality(original, D, dual, name=f"qboson_newdual(r={r}, r~={r_tilde})",
                                         anchor=ANCHOR))
    return combine("qboson_propositions", reports, anchor=ANCHOR, regime=INTERIOR, params=params)


def check_asep_qm_proposition(m, L, q, max_dual=2, margin=1):
    q = as_rational(q)
    caps = (m,) * L
    forward = asep_qm(caps, 1, q)
    backward = space_reverse(forward)
    reports = []
    for r in range(1, max_dual + 1):
        dual = asep_qm(caps, 1, q, sector=(r,))
        for r_tilde in range(1, r + 1):
            D = DualityMatrix.from_function(asep_qm_newdual_sum, backward.space, dual.space,
                                            name="asep_qm_newdual", regime=INTERIOR, margin=margin,
                                            q=q, m=m, r_tilde=r_tilde)
            reports.append(check_duality(backward, D, dual, name=f"asep_qm_newdual(r={r}, r~={r_tilde})",
                                         anchor=ANCHOR))
    return combine("asep_qm_proposition", reports, anchor=ANCHOR, regime=INTERIOR,
                   params={"m": m, "L": L, "q": q})


def ansatz_height(X, u):
    """s_X(u) = u - 2|X| + 2 #{v in X : v >= u}"""
    return u - 2 * len(X) + 2 * sum(1 for v in X if v >= u)


def ansatz_measure(X, alpha, q):
    """pi(X) = prod_j q^{x_j} / ((alpha + q^{-s_X(x_j)}) (alpha + q^{-s_X(x_j) + 1}))"""
    value = Fraction(1)
    for x in X:
        s = ansatz_height(X, x)
        value *= q ** x / ((alpha + q ** (-s)) * (alpha + q ** (-s + 1)))
    return value


def _window(Y, a, b):
    return sum(1 for y in Y if a < y <= b)


def ansatz_F(X, Y, alpha, q):
    """
    F(X; Y) = pi(X) prod_k T_k prod_{x_j > y_k} P_{j,k} for strictly
    decreasing X and Y. T_k vanishes unless y_k is in X; P_{j,k} is 1/q when
    x_j is itself in Y and (alpha + q^{U+1}) / (q (alpha + q^{U-1})) with
    U = s_X(x_j) + #{y in Y : y_k < y <= x_j} otherwise.
    """
    X, Y = tuple(X), tuple(Y)
    for name, positions in (("X", X), ("Y", Y)):
        if any(a <= b for a, b in zip(positions, positions[1:])):
            raise DomainError(f"{name} must be strictly decreasing, got {positions}")
    alpha = as_rational(alpha)
    q = as_rational(q)
    members = set(X)
    targets = set(Y)
    value = ansatz_measure(X, alpha, q)
    for y in Y:
        if y not in members:
            return Fraction(0)
        s = ansatz_height(X, y)
        value *= q ** (-y) * (alpha + q ** (-s)) * (alpha + q ** (-s + 1))
        for x in X:
            if x <= y:
                continue
            if x in targets:
                value /= q
            else:
                U = ansatz_height(X, x) + _window(Y, y, x)
                value *= (alpha + q ** (U + 1)) / (q * (alpha + q ** (U - 1)))
    return value


def ansatz_sum(Y, t, m, alpha, q):
    return sum((ansatz_F(tuple(sorted(X, reverse=True)), Y, alpha, q) for X in combinations(range(m), t)),
               Fraction(0))


def check_ansatz(m, t, r, alpha=Fraction(1, 2), q=Fraction(1, 2)):
    """
    Two reports: whether sum_X F(X; Y) over t-subsets X of {0..m-1} is the
    same for every r-subset Y, and the duality of F between dynamic ASEP
    and ASEP_{1,q}, which is registered as expected to fail.
    """
    alpha = as_rational(alpha)
    q = as_rational(q)
    params = {"m": m, "t": t, "r": r, "alpha": alpha, "q": q}
    subsets = list(combinations(range(m - 1, -1, -1), r))
    reference = ansatz_sum(subsets[0], t, m, alpha, q)
    parts = [scalar_report(f"ansatz_sum{Y}", ansatz_sum(Y, t, m, alpha, q), reference, anchor=ANCHOR)
             for Y in subsets[1:]]
    independence = combine("ansatz_independence", parts, anchor=ANCHOR, params=params)

    original = dynamic_asep(m, q, alpha, 0, m - 2 * t)
    dual = dual_asep(m, q, r)

    def function(s, y):
        X = tuple(reversed(down_steps(s)))
        return ansatz_F(X, tuple(dual_positions(y)), alpha, q)

    D = DualityMatrix.from_function(function, original.space, dual.space, name="ansatz_F", n_sites=m)
    duality = check_duality(original, D, dual, name="ansatz_duality", anchor=ANCHOR, expect_fail=True,
                            params=params)
    return [independence, duality]


def dynamic_suite(q=Fraction(1, 2), alpha=Fraction(1, 2)):
    q = as_rational(q)
    reports = [
        check_dynamic_duality_BC(6, q, alpha, 3),
        check_bc_limits(6, q, 3),
        check_dynamic_ssep_duality(6, Fraction(-7, 2), 3),
        check_ssep_limit(6, 3),
    ]
    reports.extend(check_ansatz(4, 2, 1, alpha, q))
    logger.info(f"Dynamic dualities: {sum(r.ok for r in reports)}/{len(reports)} ok")
    return reports


def report_only_suite(q=Fraction(1, 2), alpha=Fraction(1, 2)):
    """Checks whose outcome is recorded but does not decide the run"""
    q = as_rational(q)
    reports = [
        check_qboson_propositions(5, q, 2),
        check_asep_qm_proposition(2, 5, q),
        check_dynamic_duality_BC(6, q, alpha, 3, max_dual=2),
    ]
    reports.extend(check_ansatz(5, 2, 1, alpha, q))
    return reports
