"""
Duality functions as exact scalar evaluators.

Words are tuples of species labels on unit sites, fused configurations
are tuples of per-site species counts, and dynamic states are height
vectors s(0), ..., s(L). A dual configuration t lists its particles as
x_1 > x_2 > ... (k = 1 is the rightmost particle). ``offset`` is added to
the array index to get the lattice coordinate, so a half-line window
{-M, ..., -1} uses offset -M.

N_x(s) is the number of particles at sites z >= x.
"""

import logging
from fractions import Fraction
from itertools import combinations
from math import comb

from app.qcomb.qnumbers import q_binomial
from app.statespace.heights import word_of_path
from app.utils.errors import DomainError

logger = logging.getLogger(__name__)


def site_counts(state):
    """Particles per site of a word (any species counts once) or a fused configuration"""
    return tuple(sum(site) if isinstance(site, tuple) else int(site != 0) for site in state)


def tail_counts(state):
    """N_x for every x: particles at sites z >= x"""
    counts = site_counts(state)
    tails = [0] * (len(counts) + 1)
    for x in range(len(counts) - 1, -1, -1):
        tails[x] = tails[x + 1] + counts[x]
    return tails[:-1]


def dual_positions(t):
    """Sites of the dual particles in decreasing order, repeated by multiplicity"""
    return [x for x, c in reversed(list(enumerate(site_counts(t)))) for _ in range(c)]


def _check_lengths(s, t):
    if len(s) != len(t):
        raise DomainError(f"Configurations on {len(s)} and {len(t)} sites")


def _single_species(t):
    for site in t:
        if isinstance(site, tuple):
            if len(site) != 1:
                raise DomainError(f"Dual configuration {t} carries more than one species")
        elif site not in (0, 1):
            raise DomainError(f"Dual configuration {t} carries more than one species")


def _single_word(s, name):
    if any(isinstance(c, tuple) or c not in (0, 1) for c in s):
        raise DomainError(f"{name} takes a single-species word, got {s}")


def _capacities(m, length):
    return (m,) * length if isinstance(m, int) else tuple(m)


def _totals(config):
    return [sum(site) for site in config]


def d_sch(s, t, q, offset=0):
    """prod over dual particles x of 1{s(x) = 1} q^{-x - N_x(s)}"""
    _check_lengths(s, t)
    _single_species(t)
    _single_word(s, "D_Sch")
    tails = tail_counts(s)
    value = Fraction(1)
    for x, c in enumerate(site_counts(t)):
        if c:
            if not s[x]:
                return Fraction(0)
            value *= q ** (-(x + offset) - tails[x])
    return value


def d_sch_multi(s, t, q, offset=0):
    """
    Schuetz function of an n-species word against a one-species dual: a
    dual particle at x needs any particle at x and sees N_x over all
    species.
    """
    return d_sch(tuple(int(c != 0) for c in s), t, q, offset)


def d_bcs(s, t, q, offset=0):
    """prod_k q^{-N_{x_k}(s)}"""
    _check_lengths(s, t)
    tails = tail_counts(s)
    value = Fraction(1)
    for x in dual_positions(t):
        value *= q ** (-tails[x])
    return value


def bar_d_bcs(s, t, q, offset=0):
    """prod_k q^{N_{x_k}(s)}"""
    return d_bcs(s, t, 1 / Fraction(q), offset)


def d_bcs_prime(s, t, q=None, offset=0):
    """-sum_k N_{x_k}(s), the derivative of D_BCS at q = 1"""
    _check_lengths(s, t)
    tails = tail_counts(s)
    return Fraction(-sum(tails[x] for x in dual_positions(t)))


def d_kua(s, t, q, offset=0):
    """prod_k 1{s(x_k) = 0} q^{-N_{x_k}(s)}"""
    _check_lengths(s, t)
    _single_word(s, "D_Kua")
    _single_species(t)
    tails = tail_counts(s)
    value = Fraction(1)
    for x, c in enumerate(site_counts(t)):
        if c:
            if s[x]:
                return Fraction(0)
            value *= q ** (-tails[x])
    return value


def d_kua_qm(s, t, q, m, inclusive=False, offset=0):
    """
    prod_x binom(m - s(x), t(x))_q / binom(m, t(x))_q q^{-t(x) sum_{z > x} s(z)}
    on fused configurations, zero unless m - s(x) >= t(x).

    With ``inclusive`` the sum runs over z >= x.
    """
    _check_lengths(s, t)
    caps = _capacities(m, len(s))
    k = _totals(s)
    l = _totals(t)
    value = Fraction(1)
    for x in range(len(s)):
        if not l[x]:
            continue
        if caps[x] - k[x] < l[x]:
            return Fraction(0)
        right = sum(k[x:]) if inclusive else sum(k[x + 1:])
        value *= q_binomial(caps[x] - k[x], l[x], q) / q_binomial(caps[x], l[x], q) * q ** (-l[x] * right)
    return value


def d_cgrs(s, t, q, m, offset=0):
    """
    prod_x binom(s(x), t(x))_q / binom(m, t(x))_q q^{t(x) sum_{z < x} s(z) - m t(x) x}
    with 1{s(x) >= t(x)}
    """
    _check_lengths(s, t)
    caps = _capacities(m, len(s))
    k = _totals(s)
    l = _totals(t)
    value = Fraction(1)
    left = 0
    for x in range(len(s)):
        if l[x]:
            if k[x] < l[x]:
                return Fraction(0)
            value *= (q_binomial(k[x], l[x], q) / q_binomial(caps[x], l[x], q)
                      * q ** (l[x] * left - caps[x] * l[x] * (x + offset)))
        left += k[x]
    return value


def d_gkrv(s, t, m, q=None, offset=0):
    """prod_x binom(s(x), t(x)) / binom(m_x, t(x)) with 1{s(x) >= t(x)}"""
    _check_lengths(s, t)
    caps = _capacities(m, len(s))
    value = Fraction(1)
    for kx, lx, cap in zip(_totals(s), _totals(t), caps):
        if lx:
            if kx < lx:
                return Fraction(0)
            value *= Fraction(comb(kx, lx), comb(cap, lx))
    return value


def d_spi(s, t, q=None, offset=0):
    """prod_x 1{s(x) >= t(x)} on words, species labels compared as integers"""
    _check_lengths(s, t)
    return Fraction(int(all(a >= b for a, b in zip(s, t))))


def d_fused_sch(s, t, q, m, offset=0):
    """
    Fused Schuetz function on ASEP(q, m) configurations:
    prod_z binom(k_z, l_z)_q / binom(m_z, l_z)_q q^{-l_z (m^(z) + sum_{w >= z} k_w)}
    with m^(z) the number of unit sites left of block z.
    """
    _check_lengths(s, t)
    caps = _capacities(m, len(s))
    k = _totals(s)
    l = _totals(t)
    value = Fraction(1)
    first_unit = 0
    for z in range(len(s)):
        if l[z]:
            if k[z] < l[z]:
                return Fraction(0)
            value *= (q_binomial(k[z], l[z], q) / q_binomial(caps[z], l[z], q)
                      * q ** (-l[z] * (first_unit + sum(k[z:]))))
        first_unit += caps[z]
    return value


def d_open_sep(s, t, m, alphas, q=None, offset=0):
    """
    Open SEP(m/2) duality: s lives on the bulk sites, t on the bulk sites
    followed by one count per reservoir,

        prod_y alpha_y^{t(y)} prod_x binom(s(x), t(x)) / binom(m, t(x)).
    """
    bulk = len(s)
    if len(t) != bulk + len(alphas):
        raise DomainError(f"Dual configuration has {len(t)} sites, expected {bulk + len(alphas)}")
    value = d_gkrv(s, t[:bulk], m)
    for alpha, site in zip(alphas, t[bulk:]):
        value *= Fraction(alpha) ** sum(site)
    return value


def d_open_sep_multi(s, t, alphas, q=None, offset=0):
    """
    Multi-species reservoir function on unit bulk sites:
    prod_y prod_j (alpha_y^(j) + ... + alpha_y^(n))^{t_y^(j)} times
    prod_x 1{species of s at x >= species of t at x}.

    Args:
        s, t: fused configurations with capacity one in the bulk
        alphas: one density tuple per reservoir
    """
    bulk = len(s)
    if len(t) != bulk + len(alphas):
        raise DomainError(f"Dual configuration has {len(t)} sites, expected {bulk + len(alphas)}")

    def label(site):
        if sum(site) > 1:
            raise DomainError("Bulk sites of the multi-species reservoir function hold one particle")
        return next((j for j, c in enumerate(site, start=1) if c), 0)

    if any(label(a) < label(b) for a, b in zip(s, t[:bulk])):
        return Fraction(0)
    value = Fraction(1)
    for densities, site in zip(alphas, t[bulk:]):
        for j, count in enumerate(site):
            value *= sum(Fraction(a) for a in densities[j:]) ** count
    return value


def _path_counts(s, x):
    n2 = s[x] - x
    if n2 % 2:
        raise DomainError(f"Height {s[x]} at {x} does not have the parity of a particle count")
    return n2 // 2


def d_bc(s, t, q, alpha_inv, offset=0):
    """
    Dynamic ASEP duality on heights s(x) = 2 N_x + x:

        prod_k (q^{(-s(x_k) - x_k)/2} + alpha^{-1} q^{k-1}) (q^{(s(x_k) - x_k)/2} - q^{k-1})

    ``alpha_inv`` = 0 is the alpha -> infinity value.
    """
    if len(s) != len(t) + 1:
        raise DomainError(f"Height path of length {len(s)} against {len(t)} dual sites")
    value = Fraction(1)
    for k, x in enumerate(dual_positions(t), start=1):
        n = _path_counts(s, x)
        value *= (q ** (-n - x) + alpha_inv * q ** (k - 1)) * (q ** n - q ** (k - 1))
    return value


def d_bc_scaled(s, t, q, alpha, offset=0):
    """alpha^N D_BC, a polynomial in alpha that may be evaluated at alpha = 0"""
    if len(s) != len(t) + 1:
        raise DomainError(f"Height path of length {len(s)} against {len(t)} dual sites")
    value = Fraction(1)
    for k, x in enumerate(dual_positions(t), start=1):
        n = _path_counts(s, x)
        value *= (alpha * q ** (-n - x) + q ** (k - 1)) * (q ** n - q ** (k - 1))
    return value


def bc_limit_zero(s, t, q, offset=0):
    """prod_k (q^{k-1} - q^{N_{x_k}(s)}) on words"""
    tails = tail_counts(s)
    value = Fraction(1)
    for k, x in enumerate(dual_positions(t), start=1):
        value *= q ** (k - 1) - q ** tails[x]
    return value


def bc_limit_infinite(s, t, q, offset=0):
    """prod_k (q^{-N_{x_k}(s) - x_k + k - 1} - q^{-x_k}) on words"""
    tails = tail_counts(s)
    value = Fraction(1)
    for k, x in enumerate(dual_positions(t), start=1):
        value *= q ** (-tails[x] - (x + offset) + k - 1) - q ** (-(x + offset))
    return value


def _subset_sum(positions, r_tilde, term):
    total = Fraction(0)
    for subset in combinations(range(1, len(positions) + 1), r_tilde):
        product = Fraction(1)
        for i in subset:
            product *= term(i, positions[i - 1])
        total += product
    return total


def newdual_sum(s, t, q, r_tilde, offset=0):
    """sum_{|I| = r~} prod_{i in I} q^{N_{x_i}(s) - i + 1}"""
    _check_lengths(s, t)
    positions = dual_positions(t)
    if r_tilde > len(positions):
        raise DomainError(f"r~ = {r_tilde} exceeds the {len(positions)} dual particles")
    tails = tail_counts(s)
    return _subset_sum(positions, r_tilde, lambda i, x: q ** (tails[x] - i + 1))


def newdual_reflected_sum(s, t, q, r_tilde, offset=0):
    """q^{-x_1 - ... - x_r} sum_{|I| = r~} prod_{i in I} q^{-N_{x_i}(s) + i - 1}"""
    _check_lengths(s, t)
    positions = dual_positions(t)
    if r_tilde > len(positions):
        raise DomainError(f"r~ = {r_tilde} exceeds the {len(positions)} dual particles")
    tails = tail_counts(s)
    shift = q ** (-sum(x + offset for x in positions))
    return shift * _subset_sum(positions, r_tilde, lambda i, x: q ** (-tails[x] + i - 1))


def newdual_occupied(s, t, q, offset=0):
    """prod_k 1{s(x_k) = 1} q^{-N_{x_k}(s)}"""
    _check_lengths(s, t)
    _single_word(s, "newdual_occupied")
    tails = tail_counts(s)
    value = Fraction(1)
    for x in dual_positions(t):
        if not s[x]:
            return Fraction(0)
        value *= q ** (-tails[x])
    return value


def newdual_indicator_sum(s, t, q, r_tilde, occupied=True, offset=0):
    """
    sum_{|I| = r~} prod_{i in I} 1{s(x_i) = occupied} q^{N_{x_i}(s) - i + 1};
    the indicator runs over the chosen particles only.
    """
    _check_lengths(s, t)
    positions = dual_positions(t)
    if r_tilde > len(positions):
        raise DomainError(f"r~ = {r_tilde} exceeds the {len(positions)} dual particles")
    tails = tail_counts(s)
    want = 1 if occupied else 0

    def term(i, x):
        return q ** (tails[x] - i + 1) if int(s[x] != 0) == want else Fraction(0)

    return _subset_sum(positions, r_tilde, term)


def qboson_product(s, t, q, offset=0):
    """prod_k (q^{k-1} - q^{N_{x_k}(s)}) with dual particles repeated by multiplicity"""
    return bc_limit_zero(s, t, q)


def asep_qm_newdual_sum(s, t, q, m, r_tilde, offset=0):
    """
    sum_{|I| = r~} prod_{i in I} binom(m - s(x_i), t(x_i))_q / binom(m, t(x_i))_q
    q^{-i + 1 - t(x_i) sum_{z >= x_i} s(z)} 1{m - s(x_i) >= t(x_i)}
    """
    _check_lengths(s, t)
    k = _totals(s)
    l = _totals(t)
    positions = dual_positions(t)
    tails = tail_counts(s)

    def term(i, x):
        if m - k[x] < l[x]:
            return Fraction(0)
        return (q_binomial(m - k[x], l[x], q) / q_binomial(m, l[x], q)
                * q ** (-i + 1 - l[x] * tails[x]))

    return _subset_sum(positions, r_tilde, term)


def dynamic_ssep_function(s, t, lam, q=None, offset=0):
    """prod_k ((k-1) - lam + (s(x_k) + x_k)/2) ((k-1) + (x_k - s(x_k))/2)"""
    if len(s) != len(t) + 1:
        raise DomainError(f"Height path of length {len(s)} against {len(t)} dual sites")
    value = Fraction(1)
    for k, x in enumerate(dual_positions(t), start=1):
        n = _path_counts(s, x)
        value *= ((k - 1) - lam + n + x) * ((k - 1) - n)
    return value


def dynamic_ssep_limit(s, t, q=None, offset=0):
    """prod_k ((k-1) - N_{x_k}), the lambda -> -infinity limit up to constants"""
    if len(s) == len(t) + 1:
        s = word_of_path(s)
    tails = tail_counts(s)
    value = Fraction(1)
    for k, x in enumerate(dual_positions(t), start=1):
        value *= (k - 1) - tails[x]
    return value


DUALITY_FUNCTIONS = {
    "D_Sch": d_sch,
    "D_Sch_multi": d_sch_multi,
    "D_BCS": d_bcs,
    "D_BCS_prime": d_bcs_prime,
    "barD_BCS": bar_d_bcs,
    "D_Kua": d_kua,
    "D_Kua_qm": d_kua_qm,
    "D_CGRS": d_cgrs,
    "D_GKRV": d_gkrv,
    "D_Spi": d_spi,
    "D_BC": d_bc,
    "D_open_SEP": d_open_sep,
    "D_open_SEP_multi": d_open_sep_multi,
    "D_fused_Sch": d_fused_sch,
}


def evaluate(name, s, t, **params):
    """
    Evaluate a registered duality function.

    Raises:
        DomainError: for an unknown name or states of the wrong shape
    """
    try:
        function = DUALITY_FUNCTIONS[name]
    except KeyError:
        raise DomainError(f"Unknown duality function {name!r}") from None
    return function(s, t, **params)
