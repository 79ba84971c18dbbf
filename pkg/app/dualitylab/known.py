"""
The known duality functions checked against the generators they belong
to, including the fused functions obtained by conjugating with Lambda.
"""

import logging
from fractions import Fraction
from math import comb

from app.fusionmaps.kernels import lambda_kernel, phi_kernel
from app.generators.graphs import path_graph
from app.generators.exclusion import AsepProcess, AsepQmProcess, asep, asep_qm
from app.generators.symmetric import SepProcess, sep
from app.generators.transforms import projection_kernel, space_reverse
from app.qcomb.qnumbers import as_rational
from app.statespace.enumeration import fused_particle_sector, particle_sector
from app.utils.reports import combine, compare_matrices
from .checks import check_duality
from .functions import d_fused_sch, d_gkrv, d_sch, d_sch_multi, d_spi
from .matrices import CLOSED, INTERIOR, DualityMatrix

logger = logging.getLogger(__name__)

ANCHOR = "known dualities"


def dual_asep(L, q, max_dual, reverse=False):
    """One-species ASEP_{1,q} (or ASEP_{q,1}) on words with at most ``max_dual`` particles"""
    generator = AsepProcess(L, 1, q).build(particle_sector(L, max_dual))
    return space_reverse(generator) if reverse else generator


def dual_asep_qm(m, q, max_dual, reverse=False):
    generator = AsepQmProcess(m, 1, q).build(fused_particle_sector(m, max_dual))
    return space_reverse(generator) if reverse else generator


def schutz_duality(L, q, max_dual=None, n=1):
    """
    ASEP_{1,q} self-duality with prod 1{s(x) = 1} q^{-x - N_x}. For n
    species the function only sees whether a site is occupied.
    """
    q = as_rational(q)
    max_dual = L if max_dual is None else max_dual
    original = asep(L, n, q)
    dual = dual_asep(L, q, max_dual)
    function = d_sch if n == 1 else d_sch_multi
    D = DualityMatrix.from_function(function, original.space, dual.space, name="D_Sch", q=q)
    return check_duality(original, D, dual, name=f"schutz(n={n})", anchor=ANCHOR,
                         params={"L": L, "n": n, "max_dual": max_dual})


def multi_species_transport(L, n, q, max_dual=None):
    """
    Forgetting species is a Markov projection of n-species ASEP onto
    one-species ASEP, and the n-species Schuetz function factors through
    it, so the duality carries over.
    """
    q = as_rational(q)
    max_dual = L if max_dual is None else max_dual
    big = asep(L, n, q)
    small = asep(L, 1, q)
    partition = [[0], list(range(1, n + 1))]
    P = projection_kernel(big.space, small.space, partition, n)
    dual = dual_asep(L, q, max_dual)
    D_one = DualityMatrix.from_function(d_sch, small.space, dual.space, q=q)
    D_multi = DualityMatrix.from_function(d_sch_multi, big.space, dual.space, q=q)
    params = {"L": L, "n": n, "q": q}
    parts = [
        compare_matrices("projection_markov", big.matrix @ P, P @ small.matrix,
                         big.space.labels(), small.space.labels(), anchor=ANCHOR, params=params),
        compare_matrices("factorization", D_multi.matrix, P @ D_one.matrix,
                         big.space.labels(), dual.space.labels(), anchor=ANCHOR, params=params),
        check_duality(big, D_multi, dual, name="multi_species_duality", anchor=ANCHOR),
    ]
    return combine("multi_species_transport", parts, anchor=ANCHOR, regime=CLOSED, params=params)


def bcs_duality(L, q, max_dual=None, regime=INTERIOR, margin=1):
    """
    prod_k q^{-N_{x_k}} between ASEP_{1,q} and ASEP_{q,1}. It holds away
    from the ends; on the closed segment a particle next to the left end
    breaks it, so the closed claim is expected to fail.
    """
    q = as_rational(q)
    max_dual = L if max_dual is None else max_dual
    original = asep(L, 1, q)
    dual = dual_asep(L, q, max_dual, reverse=True)
    D = DualityMatrix.from_function("D_BCS", original.space, dual.space, regime=regime, margin=margin, q=q)
    return check_duality(original, D, dual, name=f"bcs[{regime}]", anchor=ANCHOR,
                         expect_fail=regime == CLOSED, params={"L": L, "max_dual": max_dual})


def kua_duality(L, q, max_dual=None, regime=CLOSED, margin=0):
    """prod_k 1{s(x_k) = 0} q^{-N_{x_k}} between ASEP_{1,q} and ASEP_{q,1}"""
    q = as_rational(q)
    max_dual = L if max_dual is None else max_dual
    original = asep(L, 1, q)
    dual = dual_asep(L, q, max_dual, reverse=True)
    D = DualityMatrix.from_function("D_Kua", original.space, dual.space, regime=regime, margin=margin, q=q)
    return check_duality(original, D, dual, name=f"kua[{regime}]", anchor=ANCHOR,
                         params={"L": L, "max_dual": max_dual})


def kua_qm_duality(m, L, q, max_dual=1, inclusive=False):
    """
    Vacancy function of ASEP(q, m) against its mirror image. The exponent
    counts particles strictly to the right of x; the variant counting x
    itself is expected to fail.
    """
    q = as_rational(q)
    caps = (m,) * L
    original = asep_qm(caps, 1, q)
    dual = dual_asep_qm(caps, q, max_dual, reverse=True)
    D = DualityMatrix.from_function("D_Kua_qm", original.space, dual.space,
                                    name="D_Kua_qm_inclusive" if inclusive else "D_Kua_qm",
                                    q=q, m=m, inclusive=inclusive)
    return check_duality(original, D, dual, name=f"kua_qm(inclusive={inclusive})", anchor=ANCHOR,
                         expect_fail=inclusive, params={"m": m, "L": L, "max_dual": max_dual})


def cgrs_duality(m, L, q, max_dual=None):
    """ASEP(q, m) self-duality on a homogeneous segment"""
    q = as_rational(q)
    caps = (m,) * L
    max_dual = m * L if max_dual is None else max_dual
    original = asep_qm(caps, 1, q)
    dual = dual_asep_qm(caps, q, max_dual)
    D = DualityMatrix.from_function("D_CGRS", original.space, dual.space, q=q, m=m)
    return check_duality(original, D, dual, name="cgrs", anchor=ANCHOR, params={"m": m, "L": L})


def gkrv_duality(graph, m, max_dual=None):
    """Self-duality of normalized SEP(m) on ``graph`` with prod binom(k, l) / binom(m, l)"""
    m = tuple(m)
    max_dual = sum(m) if max_dual is None else max_dual
    original = sep(graph, m)
    dual = SepProcess(graph, m).build(fused_particle_sector(m, max_dual))
    D = DualityMatrix.from_function(d_gkrv, original.space, dual.space, name="D_GKRV", m=m)
    return check_duality(original, D, dual, name="gkrv", anchor=ANCHOR, params={"m": m, "max_dual": max_dual})


def spi_duality(L, n):
    """prod_x 1{s(x) >= t(x)} as a self-duality of n-species SSEP"""
    process = asep(L, n, Fraction(1))
    D = DualityMatrix.from_function(d_spi, process.space, process.space, name="D_Spi")
    return check_duality(process, D, process, name=f"spi(n={n})", anchor=ANCHOR, params={"L": L, "n": n})


def fused_schutz(m, q):
    """
    Lambda D_Sch Lambda^T has the closed form d_fused_sch and is a
    self-duality of ASEP(q, m).
    """
    m = tuple(m)
    q = as_rational(q)
    lam = lambda_kernel(m, 1, q)
    D_unit = DualityMatrix.from_function(d_sch, lam.col_space, lam.col_space, q=q)
    fused = asep_qm(m, 1, q)
    D_fused = DualityMatrix.from_function(d_fused_sch, fused.space, fused.space, name="D_fused_Sch", q=q, m=m)
    params = {"m": m, "q": q}
    conjugated = lam.matrix @ D_unit.matrix @ lam.matrix.T
    parts = [
        compare_matrices("lambda_conjugate", conjugated, D_fused.matrix,
                         fused.space.labels(), fused.space.labels(), anchor=ANCHOR, params=params),
        check_duality(fused, D_fused, fused, name="fused_schutz_duality", anchor=ANCHOR),
    ]
    return combine("fused_schutz", parts, anchor=ANCHOR, regime=CLOSED, params=params)


def fused_spitzer(m):
    """
    Lambda D_Spi Lambda^T is the inhomogeneous GKRV function, while
    Lambda D_Spi Phi counts sub-configurations without the 1 / binom(m, l)
    normalization.
    """
    m = tuple(m)
    one = Fraction(1)
    lam = lambda_kernel(m, 1, one)
    phi_k = phi_kernel(m, 1)
    D_unit = DualityMatrix.from_function(d_spi, lam.col_space, lam.col_space).matrix
    fused = lam.row_space
    gkrv = DualityMatrix.from_function(d_gkrv, fused, fused, m=m).matrix
    counts = DualityMatrix.from_function(_sub_configurations, fused, fused).matrix
    params = {"m": m}
    parts = [
        compare_matrices("lambda_conjugate", lam.matrix @ D_unit @ lam.matrix.T, gkrv,
                         fused.labels(), fused.labels(), anchor=ANCHOR, params=params),
        compare_matrices("lambda_phi", lam.matrix @ D_unit @ phi_k.matrix, counts,
                         fused.labels(), fused.labels(), anchor=ANCHOR, params=params),
    ]
    return combine("fused_spitzer", parts, anchor=ANCHOR, regime=CLOSED, params=params)


def _sub_configurations(s, t):
    value = 1
    for (k,), (l,) in zip(s, t):
        if k < l:
            return Fraction(0)
        value *= comb(k, l)
    return Fraction(value)


def known_suite(q=Fraction(1, 2)):
    """The default parameter sweep over the known dualities"""
    q = as_rational(q)

    reports = [
        schutz_duality(4, q),
        schutz_duality(3, q, max_dual=2, n=2),
        multi_species_transport(3, 2, q, max_dual=2),
        bcs_duality(8, q, max_dual=2, regime=INTERIOR, margin=2),
        bcs_duality(3, q, max_dual=1, regime=CLOSED),
        kua_duality(4, q),
        kua_qm_duality(2, 3, q, max_dual=2),
        kua_qm_duality(2, 2, q, max_dual=1, inclusive=True),
        cgrs_duality(2, 3, q, max_dual=2),
        gkrv_duality(path_graph(3), (2, 2, 2), max_dual=2),
        gkrv_duality(path_graph(3), (1, 2, 3), max_dual=2),
        spi_duality(3, 2),
        fused_schutz((2, 1), q),
        fused_spitzer((2, 1, 2)),
    ]
    logger.info(f"Known dualities: {sum(r.ok for r in reports)}/{len(reports)} ok")
    return reports
