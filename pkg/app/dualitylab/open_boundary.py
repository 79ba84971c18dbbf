"""
Open boundaries: ASEP on a half-line window with one reservoir at its
right end, and SEP(m) with particle reservoirs against its absorbed dual.

The half-line {..., -2, -1} is truncated to M sites; array index i is the
lattice site i - M and index 0 is the truncated far end.
"""

import logging
from fractions import Fraction
from itertools import product

from app.generators.base_generator import BaseProcess
from app.generators.graphs import path_graph, with_reservoirs
from app.generators.symmetric import sep, sink_sep
from app.qcomb.qnumbers import as_rational
from app.statespace.enumeration import enumerate_lattice, particle_sector
from app.utils.errors import DomainError
from app.utils.reports import combine, compare_matrices, scalar_report
from .checks import check_duality_sectors
from .functions import d_gkrv, d_open_sep, d_open_sep_multi, d_sch
from .intertwiners import charge_reversal, p_diagonal
from .matrices import CLOSED, HALFLINE, DualityMatrix, state_in_regime

logger = logging.getLogger(__name__)

ANCHOR = "open boundary dualities"


class HalfLineAsepProcess(BaseProcess):
    """
    ASEP with left rate ``left`` and right rate ``right`` on M sites. With
    ``enter`` a particle enters an empty site -1 at rate ``entry_rate``; with
    ``exit`` a particle at -1 leaves at rate ``exit_rate``. Both default to 1.
    The far end is closed.
    """

    def __init__(self, M, left, right, enter=False, exit=False, entry_rate=1, exit_rate=1):
        if M < 2:
            raise DomainError(f"The half-line window needs at least two sites, got M={M}")
        self.M = M
        self.left = as_rational(left)
        self.right = as_rational(right)
        self.enter = enter
        self.exit = exit
        self.entry_rate = as_rational(entry_rate)
        self.exit_rate = as_rational(exit_rate)

    @property
    def name(self):
        return f"{'L' if self.enter else 'L_prime'}_{{{self.left},{self.right}}}"

    def params(self):
        return {"M": self.M, "left": self.left, "right": self.right, "enter": self.enter, "exit": self.exit,
                "entry_rate": self.entry_rate, "exit_rate": self.exit_rate}

    def transitions(self, state):
        for i in range(self.M - 1):
            a, b = state[i], state[i + 1]
            if a == b:
                continue
            target = state[:i] + (b, a) + state[i + 2:]
            yield target, self.right if a else self.left
        last = self.M - 1
        if self.enter and not state[last]:
            yield state[:last] + (1,), self.entry_rate
        if self.exit and state[last]:
            yield state[:last] + (0,), self.exit_rate


def half_line(M, left, right, enter=False, exit=False, max_particles=None, entry_rate=1, exit_rate=1):
    space = enumerate_lattice(M) if max_particles is None else particle_sector(M, max_particles)
    return HalfLineAsepProcess(M, left, right, enter, exit, entry_rate, exit_rate).build(space)


def _halfline_mask(rows, cols, margin, M, flip_rows=False):
    def admissible(state, flip):
        if flip:
            state = tuple(1 - c for c in state)
        return state_in_regime(state, "unfused", HALFLINE, margin, M)

    row_ok = [admissible(s, flip_rows) for s in rows]
    col_ok = [admissible(t, False) for t in cols]
    return lambda i, j: row_ok[i] and col_ok[j]


def _inverse(diagonal):
    return diagonal.map_values(lambda v: 1 / v)


def check_lemma_identities(M, q, max_dual=2, margin=2):
    """
    Charge reversal turns exits into entrances, Pi L'_{l,r} Pi = L_{r,l},
    exactly. P L'_{q,1} = L'_{1,q} P away from the far end holds when the
    exit rate follows the right jump rate, so that identity uses the
    exit_rate = right variant.
    """
    q = as_rational(q)
    full = enumerate_lattice(M)
    Pi = charge_reversal(full).matrix
    reports = []
    for l, r in ((Fraction(1), q), (q, Fraction(1))):
        exiting = half_line(M, l, r, exit=True)
        entering = half_line(M, r, l, enter=True)
        reports.append(compare_matrices(f"charge_reversal({l},{r})", Pi @ exiting.matrix @ Pi, entering.matrix,
                                        full.labels(), full.labels(), anchor=ANCHOR,
                                        params={"M": M, "l": l, "r": r}))
    backward = half_line(M, q, 1, exit=True, max_particles=max_dual, exit_rate=1)
    forward = half_line(M, 1, q, exit=True, max_particles=max_dual, exit_rate=q)
    space = forward.space
    P = p_diagonal(space, q, offset=-M)
    reports.append(compare_matrices("p_exit_intertwining", P @ backward.matrix, forward.matrix @ P,
                                    space.labels(), space.labels(),
                                    mask=_halfline_mask(space, space, margin, M), anchor=ANCHOR,
                                    regime=HALFLINE, params={"M": M, "q": q, "margin": margin}))
    return reports


def check_case_two(M, q, max_dual=2):
    """D_Sch(s, s'_-) = D_Sch(s, s') whenever both s and s' occupy site -1"""
    q = as_rational(q)
    full = enumerate_lattice(M)
    duals = particle_sector(M, max_dual)
    last = M - 1
    reports = []
    for s in full:
        if not s[last]:
            continue
        for t in duals:
            if not t[last]:
                continue
            removed = t[:last] + (0,)
            reports.append(scalar_report(f"case_two({s},{t})", d_sch(s, removed, q, offset=-M),
                                         d_sch(s, t, q, offset=-M), anchor=ANCHOR))
    report = combine("case_two", reports, anchor=ANCHOR, regime=CLOSED, params={"M": M, "q": q})
    report.details["pairs"] = len(reports)
    return report


def check_open_asep(M, q, max_dual=2, margin=2, coupled=False):
    """
    The four half-line duality relations between the entering process
    L_{1,q} (or its reversal L'_{q,1}) and the exiting dual, together with
    the lemma identities and the Case-2 identity they rest on. Entrance and
    exit happen at rate 1; with ``coupled`` the exit of every process runs
    at its right jump rate instead.

    The relations themselves do not hold on admissible entries: an entrance
    at -1 raises N_x at every site, which the dual exit cannot mirror.
    They are reported with their witnesses and registered as expected to
    fail.

    Returns:
        list of CheckReport
    """
    if M < 5:
        raise DomainError(f"The half-line checks need M >= 5, got M={M}")
    q = as_rational(q)
    params = {"M": M, "q": q, "max_dual": max_dual, "margin": margin, "coupled": coupled}
    full = enumerate_lattice(M)
    Pi = charge_reversal(full).matrix

    entering = half_line(M, 1, q, enter=True)
    exiting_reversed = half_line(M, q, 1, exit=True)
    dual_forward = half_line(M, 1, q, exit=True, max_particles=max_dual, exit_rate=q if coupled else 1)
    dual_backward = half_line(M, q, 1, exit=True, max_particles=max_dual)
    duals = dual_forward.space
    D = DualityMatrix.from_function(d_sch, full, duals, name="D_Sch", q=q, offset=-M).matrix
    P_inv = _inverse(p_diagonal(duals, q, offset=-M))

    relations = [
        ("open_C", entering, D, dual_forward, False),
        ("open_D", exiting_reversed, Pi @ D, dual_forward, True),
        ("open_E", exiting_reversed, Pi @ D @ P_inv, dual_backward, True),
        ("open_F", entering, D @ P_inv, dual_backward, False),
    ]
    reports = check_lemma_identities(M, q, max_dual, margin) + [check_case_two(M, q, max_dual)]
    for name, L, matrix, L_dual, flip in relations:
        mask = _halfline_mask(full, duals, margin, M, flip_rows=flip)
        reports.append(compare_matrices(name, L.matrix @ matrix, matrix @ L_dual.matrix.T,
                                        full.labels(), duals.labels(), mask=mask, anchor=ANCHOR,
                                        regime=HALFLINE, expect_fail=True, params=params))
    logger.info(f"Open ASEP at M={M}: {sum(r.ok for r in reports)}/{len(reports)} ok")
    return reports


def open_sep_graph(n_bulk, links, bulk_rate=Fraction(1)):
    """Path graph on the bulk with reservoir sites attached by ``links``"""
    return with_reservoirs(path_graph(n_bulk, as_rational(bulk_rate)), links)


def check_open_sep(m, alphas, n_bulk=4, links=None, bulk_rate=Fraction(1), max_dual=2):
    """
    Open SEP(m) with reservoir densities ``alphas`` against SEP(m) whose
    reservoir sites absorb, one dual sector per particle number.

    Args:
        links: one dict bulk site -> rate per reservoir; defaults to a
            single reservoir at site 0 with rate 1 (the half-line geometry)
    """
    alphas = tuple(as_rational(a) for a in alphas)
    links = links or [{0: Fraction(1)}]
    if len(links) != len(alphas):
        raise DomainError(f"{len(links)} reservoir links for {len(alphas)} densities")
    graph = open_sep_graph(n_bulk, links, bulk_rate)
    caps = (m,) * n_bulk
    original = sep(graph, caps, 1, reservoirs=[(a,) for a in alphas])
    pairs = []
    for N in range(max_dual + 1):
        dual = sink_sep(graph, caps, len(alphas), N)
        D = DualityMatrix.from_function(d_open_sep, original.space, dual.space, name=f"D_open_SEP[N={N}]",
                                        m=m, alphas=alphas)
        pairs.append((original, D, dual))
    params = {"m": m, "alphas": [str(a) for a in alphas], "n_bulk": n_bulk, "links": len(links)}
    return check_duality_sectors(pairs, f"open_sep(reservoirs={len(alphas)})", anchor=ANCHOR, params=params)


def need_cases(m, alpha):
    """
    The one-site identity behind the open SEP duality,

        (1 - a) s [f(s - 1, s') - f(s, s')] + a (m - s) [f(s + 1, s') - f(s, s')]
            = s' [a f(s, s' - 1) - f(s, s')],   f(s, s') = binom(s, s') / binom(m, s'),

    swept over s, s' in 0..m and grouped by the four cases of s' against s.
    """
    alpha = as_rational(alpha)
    groups = {"vanishing": [], "raising": [], "diagonal": [], "generic": []}

    def f(s, t):
        return d_gkrv(((s,),), ((t,),), m) if 0 <= s <= m and 0 <= t <= m else Fraction(0)

    for s, t in product(range(m + 1), repeat=2):
        lhs = (1 - alpha) * s * (f(s - 1, t) - f(s, t)) + alpha * (m - s) * (f(s + 1, t) - f(s, t))
        rhs = t * (alpha * f(s, t - 1) - f(s, t))
        if t > s + 1:
            case = "vanishing"
        elif t == s + 1:
            case = "raising"
        elif t == s:
            case = "diagonal"
        else:
            case = "generic"
        groups[case].append(scalar_report(f"need(s={s}, s'={t})", lhs, rhs, anchor=ANCHOR))
    return [combine(f"need_{case}", reports, anchor=ANCHOR, params={"m": m, "alpha": alpha})
            for case, reports in groups.items() if reports]


def check_open_sep_multi(n, densities, n_bulk=2, max_dual=2, exchange=False):
    """
    n-species SSEP with one reservoir at site 0 against n-species SSEP
    absorbed there, with the reservoir factor
    prod_j (alpha^(j) + ... + alpha^(n))^{t^(j)} and 1{species of s >= species of t} in the bulk.

    The open boundary only injects species j into holes at rate alpha^(j)
    and empties particles at rate 1 - sum(alpha); the function is not a
    duality for it (a species-j particle at the boundary site misses the
    alpha^(j') it would gain by turning into a higher species j') and the
    report is an expected failure. With ``exchange`` the reservoir also
    replaces a particle of one species by another, the infinite-capacity
    limit of a fused reservoir site, and the function is a duality.
    """
    densities = tuple(as_rational(a) for a in densities)
    if len(densities) != n:
        raise DomainError(f"{n} species need {n} densities, got {len(densities)}")
    graph = open_sep_graph(n_bulk, [{0: Fraction(1)}])
    caps = (1,) * n_bulk
    original = sep(graph, caps, n, reservoirs=[densities], exchange=exchange)
    pairs = []
    for sector in product(range(max_dual + 1), repeat=n):
        if sum(sector) > max_dual:
            continue
        dual = sink_sep(graph, caps, 1, sector, n)
        D = DualityMatrix.from_function(d_open_sep_multi, original.space, dual.space,
                                        name=f"D_open_SEP_multi{sector}", alphas=(densities,))
        pairs.append((original, D, dual))
    params = {"n": n, "densities": [str(a) for a in densities], "n_bulk": n_bulk, "exchange": exchange}
    name = f"open_sep_multi(n={n}, {'exchange' if exchange else 'open'})"
    return check_duality_sectors(pairs, name, anchor=ANCHOR, expect_fail=not exchange, params=params)


def open_boundary_suite(q=Fraction(1, 2), alpha=Fraction(1, 2)):
    reports = check_open_asep(6, q)
    reports.append(check_open_sep(2, (alpha,), n_bulk=3))
    reports.append(check_open_sep(1, (alpha, Fraction(1, 3)), n_bulk=3,
                                  links=[{0: Fraction(2)}, {2: Fraction(1, 3)}], bulk_rate=Fraction(1, 2)))
    for m in (1, 2, 3):
        reports.extend(need_cases(m, alpha))
    return reports
