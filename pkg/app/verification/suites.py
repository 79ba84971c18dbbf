"""
The verification suites. Each one turns the current settings into a list
of jobs; positive claims, expected failures and report-only entries are
all returned as CheckReports.
"""

import logging
from fractions import Fraction

from app.dualitylab import (
    known_suite, open_boundary_suite, dynamic_suite, report_only_suite, check_q_intertwining,
    check_p_intertwining, check_newdual, check_charge_reversal_involution, check_S_independence,
    check_shift_step, check_stationary_schutz, check_open_sep_multi,
)
from app.fusionmaps import rogers_pitman_asep, rogers_pitman_sep, check_q_exchangeability, check_preservation
from app.generators import asep, asep_qm, path_graph, consecutive_partitions, check_projection
from app.qcomb import (
    Q_POINTS, ALPHA_POINTS, check_pascal, check_qbin, check_qbin2, check_qbin3, check_qaBin, check_prev_lemmas,
)
from app.stationarymeasures import (
    pi_ms, pi_fused, check_stationary, check_detailed_balance, check_factors_pmf, check_factors_sector,
    check_boundary_conditionals, check_factors_ratios, check_shift, check_dyn_stationarity, check_all_up_absorbing,
)
from app.utils.reports import combine, scalar_report
from app.vertexweights import (
    R, PARAMETER_POINTS, check_stochasticity, check_telescoping, q_jackson_suite, conjugation_report,
    check_rates_derivative, check_qboson_limit, check_dynamic_mismatch,
)
from .base_suite import BaseSuite, Job

logger = logging.getLogger(__name__)

MAX_M = 8
MAX_SCHUTZ = 6
FUSION_CASES = ((1, (2, 2)), (1, (2, 1, 3)), (2, (2, 2)), (3, (1, 2, 1)))


def _points(default, extra):
    return tuple(dict.fromkeys(default + (extra,)))


class QCombSuite(BaseSuite):
    """q-identities over m <= 8 at the shared parameter points and the chosen q, alpha"""

    def jobs(self):
        qs = _points(Q_POINTS, self.settings_manager.get_setting("q"))
        alphas = _points(ALPHA_POINTS, self.settings_manager.get_setting("alpha"))

        def pascal():
            return combine("pascal", [check_pascal(m, k, q) for q in qs for m in range(1, MAX_M + 1)
                                      for k in range(1, m + 1)], anchor="q-Pascal rules")

        def qbin():
            return combine("qBin", [check_qbin(m, k, q) for q in qs for m in range(MAX_M + 1)
                                    for k in range(m + 1)], anchor="subset form of the q-binomial")

        def qbin2():
            return [check_qbin2(blocks, q) for q in qs for blocks in ((1, 1), (2, 1), (1, 2, 1), (2, 2), (3, 2, 1))]

        def qbin3():
            return [check_qbin3(L, species, q) for q in qs
                    for L, species in ((3, (1,)), (4, (1, 1)), (5, (2, 1)), (6, (1, 1, 1)))]

        def qabin():
            return combine("qaBin", [check_qaBin(m, k, q, a) for q in qs for a in alphas
                                     for m in range(1, MAX_M + 1) for k in range(1, m + 1)],
                           anchor="alpha-deformed q-binomial theorem")

        def prev():
            return combine("prev_lemmas", [check_prev_lemmas(m, k, m, q, a) for q in qs for a in alphas
                                           for m in range(1, MAX_M + 1) for k in range(1, m + 1)],
                           anchor="recursions in the number of blocks")

        return [Job("pascal", pascal), Job("qbin", qbin), Job("qbin2", qbin2), Job("qbin3", qbin3),
                Job("qabin", qabin), Job("prev", prev)]


class FusionSuite(BaseSuite):
    """Fusion certificates, q-exchangeability and the species projections"""

    def jobs(self):
        q = self.settings_manager.get_setting("q")
        sites = min(self.settings_manager.get_setting("sites"), 4)
        species = min(self.settings_manager.get_setting("species"), 3)
        m = self.settings_manager.get_setting("m")
        sector = self.settings_manager.get_setting("sector")

        jobs = [Job(f"rogers_pitman(n={n}, m={blocks})", lambda n=n, blocks=blocks: rogers_pitman_asep(blocks, n, q))
                for n, blocks in FUSION_CASES]
        if (species, tuple(m)) not in FUSION_CASES:
            jobs.append(Job(f"rogers_pitman(n={species}, m={m})",
                            lambda: rogers_pitman_asep(m, species, q, sector)))
        jobs.append(Job("rogers_pitman_sep", lambda: [rogers_pitman_sep(path_graph(3), (2, 1, 2), 1, (2,)),
                                                       rogers_pitman_sep(path_graph(3), (2, 1, 2), 2, (1, 1))]))

        def exchangeability():
            return [check_q_exchangeability(pi_ms(sites, 2, q, sector=(1, 1)), q),
                    check_q_exchangeability(pi_fused((2, 1, 2), 2, q, sector=(1, 2)), q),
                    check_preservation(asep(3, 2, q, sector=(1, 1)), pi_ms(3, 2, q, sector=(1, 1)), q)]

        def projections():
            reports = []
            for n in range(2, species + 1):
                big = asep(sites, n, q)
                for p in range(1, n):
                    small = asep(sites, p, q)
                    reports.extend(check_projection(big, small, part, n) for part in consecutive_partitions(n, p))
            big, small = asep_qm((2, 1), 2, q), asep_qm((2, 1), 1, q)
            reports.extend(check_projection(big, small, part, 2) for part in consecutive_partitions(2, 1))
            return reports

        jobs.extend([Job("q_exchangeability", exchangeability), Job("projections", projections)])
        return jobs


class DualitySuite(BaseSuite):
    """Known, open-boundary and dynamic dualities with the intertwiners and the Schutz sums"""

    def jobs(self):
        q = self.settings_manager.get_setting("q")
        alpha = self.settings_manager.get_setting("alpha")
        sites = self.settings_manager.get_setting("sites")

        def intertwiners():
            return [check_q_intertwining(sites, 2, 1, q), check_p_intertwining(6, q, 2),
                    check_newdual(6, q, 2, 1), check_charge_reversal_involution(3)]

        def schutz():
            reports = [check_S_independence(m, k, q) for m in range(1, MAX_SCHUTZ + 1) for k in range(1, m + 1)]
            reports.extend(check_shift_step(m, k, q) for m in range(2, MAX_SCHUTZ + 1) for k in range(1, m + 1))
            reports.append(check_stationary_schutz(3, 2, 1, q))
            return reports

        return [
            Job("known", lambda: known_suite(q)),
            Job("open_boundary", lambda: open_boundary_suite(q, alpha)),
            Job("dynamic", lambda: dynamic_suite(q, alpha)),
            Job("intertwiners", intertwiners),
            Job("schutz", schutz),
            Job("report_only", lambda: report_only_suite(q, alpha), report_only=True),
            Job("open_sep_multi", lambda: check_open_sep_multi(2, (alpha, Fraction(1, 3)))),
            Job("open_sep_multi_exchange", lambda: check_open_sep_multi(2, (alpha, Fraction(1, 3)), exchange=True),
                report_only=True),
        ]


class MeasuresSuite(BaseSuite):
    """Reversible measures and the dynamic height measure calculus"""

    def jobs(self):
        q = self.settings_manager.get_setting("q")
        alpha = self.settings_manager.get_setting("alpha")
        sites = min(self.settings_manager.get_setting("sites"), 4)

        def reversible():
            reports = []
            for n, sector in ((1, (2,)), (2, (1, 1)), (2, (1, 2))):
                gen, measure = asep(sites, n, q, sector=sector), pi_ms(sites, n, q, sector)
                reports.extend([check_detailed_balance(measure, gen), check_stationary(measure, gen)])
            for m, n in (((2, 1), 1), ((1, 2, 2), 1), ((2, 2), 2)):
                reports.append(check_detailed_balance(pi_fused(m, n, q), asep_qm(m, n, q)))
            return reports

        def factors():
            reports = []
            for m in range(1, MAX_M + 1):
                reports.extend([check_factors_pmf(q, alpha, m), check_factors_sector(q, alpha, m)])
            reports.extend(check_boundary_conditionals(q, alpha, m) for m in range(1, 6))
            reports.append(combine("factors_ratios", [check_factors_ratios(k, l, m, q, alpha)
                                                      for m in range(1, MAX_M + 1)
                                                      for k in range(m + 1) for l in range(k + 1)]))
            reports.extend([check_shift(q, alpha, 2, 3), check_shift(q, alpha, -1, 4)])
            return reports

        def dynamic():
            return [check_dyn_stationarity(q, Fraction(0), m) for m in (2, 3, 4)] + [check_all_up_absorbing(q, alpha, 4)]

        return [
            Job("reversible", reversible),
            Job("factors", factors),
            Job("dynamic_limits", dynamic),
            Job("dyn_stationarity", lambda: [check_dyn_stationarity(q, alpha, m) for m in (2, 3, 4)],
                report_only=True),
        ]


class VertexSuite(BaseSuite):
    """Fused dynamical weights and the q-Boson rates"""

    def jobs(self):
        l = self.settings_manager.get_setting("l")
        m = self.settings_manager.get_setting("m")[0]
        lam = self.settings_manager.get_setting("lambda")
        w = self.settings_manager.get_setting("w")
        eta = self.settings_manager.get_setting("eta")
        q = self.settings_manager.get_setting("q")
        alpha = self.settings_manager.get_setting("alpha")

        def r22():
            total = sum(R(2, 2, 1, 1, j, 2 - j, lam, w, eta) for j in range(3))
            return scalar_report("R22_row_sum", total.real, 1.0, anchor="R_22 row sum", tol=1e-10,
                                 params={"lambda": lam, "w": w, "eta": eta})

        def stochasticity():
            shapes = dict.fromkeys([(a, b) for a in range(1, 4) for b in range(1, 4)] + [(l, m)])
            return [check_stochasticity(a, b, lam, w, eta) for a, b in shapes]

        def limits():
            return [check_rates_derivative(float(q), 0.3, 0.2), check_qboson_limit(float(q), 0.2),
                    check_dynamic_mismatch(q, alpha, 0)]

        return [
            Job("r22", r22),
            Job("stochasticity", stochasticity),
            Job("telescoping", lambda: check_telescoping(r_max=3, points=4, seed=7)),
            Job("qboson_limits", limits),
            Job("q_jackson", lambda: q_jackson_suite(_points(PARAMETER_POINTS, (eta, lam)))),
            Job("conjugation_ratios", lambda: [conjugation_report(a, b, eta, lam) for a in (1, 2) for b in (1, 2)],
                report_only=True),
        ]


SUITES = {
    "qcomb": QCombSuite,
    "fusion": FusionSuite,
    "duality": DualitySuite,
    "measures": MeasuresSuite,
    "vertex": VertexSuite,
}
