"""
Hydrodynamic experiments: simulated observables of the open processes set
against their limit profiles and, for SSEP(m/2), against the exact
finite-lattice value obtained from the one-particle dual.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import expm_multiply
from scipy.special import logsumexp

from app.utils.errors import DomainError
from app.utils.reports import CheckReport, Witness, write_csv
from .gillespie import gillespie, run_ensemble
from .processes import CONVENTIONS, OpenAsepProcess, OpenSsepProcess, tail_counts, upper_tail_counts
from .reference import density_profile, hopf_cole_ballistic, hopf_cole_reference, integrated_density

logger = logging.getLogger(__name__)

CSV_HEADER = ["observable", "coordinate", "tau", "simulated", "stderr", "reference", "abs_diff"]
SSEP_ANCHOR = "open SSEP(m/2) hydrodynamics"
ASEP_ANCHOR = "open ASEP Hopf-Cole limit"
MAX_EXACT_SITES = 14


@dataclass
class SimSpec:
    """Process, scaling and ensemble of one Monte Carlo experiment"""
    process: str
    params: dict
    L: int
    horizon: float
    trials: int
    seed: int
    observables: tuple = ()

    def validate(self):
        if self.L < 2:
            raise DomainError(f"Need L >= 2, got {self.L}")
        if self.trials < 1:
            raise DomainError(f"Need at least one trial, got {self.trials}")
        if self.horizon < 0:
            raise DomainError(f"Negative horizon {self.horizon}")
        return self


@dataclass
class ResultRow:
    observable: str
    coordinate: float
    tau: float
    simulated: float
    stderr: float
    reference: float

    @property
    def diff(self):
        return abs(self.simulated - self.reference)

    def as_csv(self):
        return [self.observable, self.coordinate, self.tau, self.simulated, self.stderr, self.reference, self.diff]


@dataclass
class HydroResult:
    spec: SimSpec
    rows: list
    profile: np.ndarray = None
    details: dict = field(default_factory=dict)

    def row(self, observable):
        for r in self.rows:
            if r.observable == observable:
                return r
        raise KeyError(observable)


def _bulk_rate(convention):
    if convention not in CONVENTIONS:
        raise DomainError(f"Unknown convention {convention!r}, expected one of {sorted(CONVENTIONS)}")
    return CONVENTIONS[convention]


def _ssep_geometry(chi, tau, L, m, bulk):
    """Observed site x = floor(chi sqrt(L)) >= 1, lattice size and horizon m tau L"""
    x = max(1, int(math.floor(chi * math.sqrt(L))))
    horizon = m * tau * L
    spread = math.sqrt(2 * bulk * tau * L)
    n_sites = x + int(math.ceil(8 * spread)) + 2
    return x, n_sites, horizon


def dual_absorption_profile(n_sites, m, gamma, bulk, horizon):
    """
    P_x(the one-particle dual has left through the reservoir by ``horizon``)
    for x = 1..n_sites. The dual walks at rate bulk/m to each neighbour,
    falls into the reservoir from site 1 at rate 1/(gamma m) and reflects
    at the far end.
    """
    sink = n_sites
    rows, cols, vals = [], [], []
    for x in range(n_sites):
        out = 0.0
        for y in (x - 1, x + 1):
            if 0 <= y < n_sites:
                rows.append(x)
                cols.append(y)
                vals.append(bulk / m)
                out += bulk / m
        if x == 0:
            rows.append(x)
            cols.append(sink)
            vals.append(1 / (gamma * m))
            out += 1 / (gamma * m)
        rows.append(x)
        cols.append(x)
        vals.append(-out)
    generator = sparse.csr_matrix((vals, (rows, cols)), shape=(n_sites + 1, n_sites + 1))
    indicator = np.zeros(n_sites + 1)
    indicator[sink] = 1.0
    return expm_multiply(generator * horizon, indicator)[:n_sites]


def ssep_hydro(alpha, m=2, gamma=0.5, chi=0.5, tau=0.5, L=200, trials=20000, seed=7,
               convention="unit_walk", workers=None):
    """
    Density and integrated density of open SSEP(m/2) from the empty start,
    at x = floor(chi sqrt(L)) and rescaled time m tau L.

    Returns:
        HydroResult with rows "density", "density_finite_size",
        "integrated_density" and "integrated_density_finite_size"
    """
    bulk = _bulk_rate(convention)
    x, n_sites, horizon = _ssep_geometry(chi, tau, L, m, bulk)
    spec = SimSpec("ssep-open", {"alpha": alpha, "m": m, "gamma": gamma, "chi": chi, "convention": convention},
                   L, horizon, trials, seed, ("density", "integrated_density")).validate()
    process = OpenSsepProcess(n_sites, m, alpha, gamma, bulk)

    def trial(rng):
        return gillespie(process, horizon, rng).state / m

    stats = run_ensemble(trial, trials, seed, workers, keep_samples=True)
    tails = np.array([upper_tail_counts(s) for s in stats.samples])
    scale = math.sqrt(L)
    n_hat = tails[:, x - 1] / scale
    n_err = n_hat.std(ddof=1) / math.sqrt(trials) if trials > 1 else float("nan")

    exact = alpha * dual_absorption_profile(n_sites, m, gamma, bulk, horizon)
    # walk variance per unit tau relative to the unit-rate walk
    tau_eff = tau * 2 * bulk
    rows = [
        ResultRow("density", chi, tau, stats.mean[x - 1], stats.stderr[x - 1], density_profile(alpha, chi, tau_eff)),
        ResultRow("density_finite_size", chi, tau, stats.mean[x - 1], stats.stderr[x - 1], exact[x - 1]),
        ResultRow("integrated_density", chi, tau, n_hat.mean(), n_err, integrated_density(alpha, chi, tau_eff)),
        ResultRow("integrated_density_finite_size", chi, tau, n_hat.mean(), n_err, exact[x - 1:].sum() / scale),
    ]
    logger.info(f"SSEP hydro at x={x} (chi={chi}, tau={tau}, L={L}): rho={stats.mean[x - 1]:.4f} "
                f"ref={rows[0].reference:.4f} finite={exact[x - 1]:.4f}")
    return HydroResult(spec, rows, profile=stats.mean, details={"site": x, "sites": n_sites, "tau_eff": tau_eff,
                                                           "exact": exact})


def ssep_stationary(alpha, sites=(1,), n_sites=4, horizon=None, trials=2000, m=1, gamma=0.5, seed=7,
                    convention="unit_walk", workers=None):
    """
    Product moment E[prod k_x / m] over ``sites`` after a long run, against
    alpha^d.

    Returns:
        HydroResult with one "moment" row
    """
    if not sites or any(not 1 <= s <= n_sites for s in sites):
        raise DomainError(f"Sites {sites} must lie in 1..{n_sites}")
    bulk = _bulk_rate(convention)
    horizon = 10 * n_sites ** 2 * m if horizon is None else horizon
    spec = SimSpec("ssep-stationary", {"alpha": alpha, "m": m, "sites": tuple(sites)},
                   n_sites, horizon, trials, seed, ("moment",)).validate()
    process = OpenSsepProcess(n_sites, m, alpha, gamma, bulk)
    index = [s - 1 for s in sites]

    def trial(rng):
        state = gillespie(process, horizon, rng).state
        return [np.prod(state[index] / m)]

    stats = run_ensemble(trial, trials, seed, workers)
    row = ResultRow("moment", len(sites), horizon, stats.mean[0], stats.stderr[0], alpha ** len(sites))
    return HydroResult(spec, [row])


def _asep_geometry(zeta, tau, L, q):
    depth = abs(int(math.floor(zeta * L)))
    if depth < 1:
        raise DomainError(f"zeta L must reach at least site -1, got zeta={zeta}, L={L}")
    horizon = tau * L
    n_sites = depth + int(math.ceil(horizon + 6 * math.sqrt((1 + q) * horizon))) + 2
    return depth, n_sites, horizon


def asep_tail_moment(n_sites, q, horizon, depth, enter_rate=1.0):
    """
    E[q^{-N}] at time ``horizon`` from the empty segment, N counting the
    particles on the first ``depth`` sites, by the action of the
    generator on all 2^n_sites configurations. Bit i of a state is site -1-i.
    """
    if n_sites > MAX_EXACT_SITES:
        raise DomainError(f"Exact moment needs at most {MAX_EXACT_SITES} sites, got {n_sites}")
    states = np.arange(2 ** n_sites)
    occupied = (states[:, None] >> np.arange(n_sites)) & 1
    rows, cols, vals = [], [], []
    for i in range(n_sites - 1):
        swap = states ^ (1 << i) ^ (1 << (i + 1))
        for mask, rate in ((occupied[:, i] & (1 - occupied[:, i + 1]), 1.0),
                           (occupied[:, i + 1] & (1 - occupied[:, i]), q)):
            source = states[mask == 1]
            rows.append(source)
            cols.append(swap[source])
            vals.append(np.full(len(source), rate))
    source = states[occupied[:, 0] == 0]
    rows.append(source)
    cols.append(source | 1)
    vals.append(np.full(len(source), enter_rate))
    rows, cols, vals = np.concatenate(rows), np.concatenate(cols), np.concatenate(vals)
    out = np.bincount(rows, weights=vals, minlength=len(states))
    generator = sparse.csr_matrix((np.concatenate([vals, -out]), (np.concatenate([rows, states]),
                                                                   np.concatenate([cols, states]))),
                                  shape=(len(states), len(states)))
    observable = q ** -occupied[:, :depth].sum(axis=1).astype(float)
    return float(expm_multiply(generator * horizon, observable)[0])


def asep_hydro(q, zeta=-0.5, tau=1.0, L=400, trials=10000, seed=7, workers=None):
    """
    L^{-1} E[q^{-N_x}] at x = floor(zeta L) and time tau L from the empty
    start. The mean is taken in log space; ``log10_estimate`` in the details
    stays finite when the estimate itself overflows.

    Returns:
        HydroResult with rows "hopf_cole" (double-integral reference) and
        "hopf_cole_ballistic", plus "hopf_cole_finite_size" (the exact
        expectation on the simulated segment) when it has at most
        MAX_EXACT_SITES sites
    """
    if not 0 < q < 1:
        raise DomainError(f"Need 0 < q < 1, got {q}")
    depth, n_sites, horizon = _asep_geometry(zeta, tau, L, q)
    spec = SimSpec("asep-open", {"q": q, "zeta": zeta}, L, horizon, trials, seed, ("hopf_cole",)).validate()
    process = OpenAsepProcess(n_sites, q)

    def trial(rng):
        run = gillespie(process, horizon, rng)
        return [tail_counts(run.state)[depth - 1]]

    stats = run_ensemble(trial, trials, seed, workers, keep_samples=True)
    exponents = -stats.samples[:, 0] * math.log(q)
    log_mean = logsumexp(exponents) - math.log(trials)
    log_second = logsumexp(2 * exponents) - math.log(trials)
    relative_spread = math.sqrt(max(math.expm1(min(log_second - 2 * log_mean, 700)), 0.0))
    with np.errstate(over="ignore"):
        estimate = float(np.exp(log_mean - math.log(L)))
    stderr = estimate * relative_spread / math.sqrt(trials) if trials > 1 else float("nan")
    rows = [
        ResultRow("hopf_cole", zeta, tau, estimate, stderr, hopf_cole_reference(zeta, tau, q)),
        ResultRow("hopf_cole_ballistic", zeta, tau, estimate, stderr, hopf_cole_ballistic(zeta, tau, q)),
    ]
    if n_sites <= MAX_EXACT_SITES:
        exact = asep_tail_moment(n_sites, q, horizon, depth) / L
        rows.append(ResultRow("hopf_cole_finite_size", zeta, tau, estimate, stderr, exact))
    details = {"log10_estimate": (log_mean - math.log(L)) / math.log(10), "mean_tail_count": stats.mean[0],
               "site": -depth, "sites": n_sites}
    logger.info(f"ASEP Hopf-Cole at x={-depth}, t={horizon}: log10 estimate {details['log10_estimate']:.3f}, "
                f"reference {rows[0].reference:.4f}")
    return HydroResult(spec, rows, details=details)


def band_report(result, observable, tol=None, relative=False, sigmas=3.0, anchor="", report_only=False):
    """
    Acceptance of one row: |diff| <= tol (relative to the reference when
    ``relative``) and, with ``sigmas``, |diff| <= sigmas * stderr.
    """
    row = result.row(observable)
    passed = bool(np.isfinite(row.simulated))
    if tol is not None:
        bound = tol * abs(row.reference) if relative else tol
        passed = passed and row.diff <= bound
    if sigmas is not None:
        passed = passed and row.diff <= sigmas * row.stderr + 1e-12
    witnesses = [] if passed else [Witness(observable, f"{row.coordinate}", f"{row.simulated:.6g}",
                                           f"{row.reference:.6g}")]
    return CheckReport(name=f"{result.spec.process}:{observable}", passed=passed, anchor=anchor,
                       regime="monte-carlo", params={**result.spec.params, "L": result.spec.L,
                                                     "trials": result.spec.trials, "seed": result.spec.seed},
                       witnesses=witnesses,
                       details={"stderr": row.stderr, "report_only": report_only, **{
                           k: v for k, v in result.details.items() if np.isscalar(v)}})


def write_hydro_csv(path, results):
    rows = [row.as_csv() for result in results for row in result.rows]
    write_csv(path, CSV_HEADER, rows)
    return rows
