from fractions import Fraction

import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate, stats
from scipy.linalg import expm

from app.generators import asep
from app.hydrosim import (
    LatticeProcess, OpenAsepProcess, OpenSsepProcess, SimSpec, CSV_HEADER, gillespie, simulate_generator,
    trial_generators, run_ensemble, density_profile, integrated_density, passage_probability,
    passage_quadrature, hopf_cole_reference, hopf_cole_ballistic, pde_residual, density_slope, passage_limit,
    hopf_cole_slope, dual_absorption_profile, ssep_hydro, ssep_stationary, asep_hydro, asep_tail_moment,
    band_report, write_hydro_csv, MAX_EXACT_SITES,
)
from app.hydrosim.plots import plot_density_profile
from app.stationarymeasures import pi_ms
from app.utils.errors import DomainError, ParameterError


class Exploding(LatticeProcess):
    def initial_state(self):
        return np.zeros(1, dtype=np.int64)

    def propensities(self, state):
        return np.array([2e12])

    def fire(self, state, channel):
        return 0


def test_zero_rate_state_is_constant():
    empty = asep(2, 1, Fraction(1, 2), sector=(0,))
    assert simulate_generator(empty, (0, 0), 10.0, np.random.default_rng(0)) == (0, 0)
    run = gillespie(OpenSsepProcess(5, 1, 0.0, 0.5), 10.0, np.random.default_rng(0))
    assert run.events == 0
    assert not run.state.any()


def test_rate_overflow_raises():
    with pytest.raises(ParameterError):
        gillespie(Exploding(), 1.0, np.random.default_rng(0))


def test_single_particle_ssep_matches_semigroup():
    gen = asep(3, 1, 1, sector=(1,))
    start, t, trials = (0, 1, 0), 0.4, 4000
    exact = expm(gen.to_numpy() * t)[gen.space.index(start)]
    counts = np.zeros(len(gen.space))
    for rng in trial_generators(11, trials):
        counts[gen.space.index(simulate_generator(gen, start, t, rng))] += 1
    empirical = counts / trials
    band = 4.5 * np.sqrt(exact * (1 - exact) / trials)
    assert np.all(np.abs(empirical - exact) <= band)


def test_closed_asep_equilibrates_to_pi():
    q = Fraction(1, 2)
    gen = asep(4, 1, q, sector=(2,))
    pi = pi_ms(4, 1, q, sector=(2,))
    trials = 3000
    counts = np.zeros(len(gen.space))
    for rng in trial_generators(5, trials):
        counts[gen.space.index(simulate_generator(gen, (1, 1, 0, 0), 30.0, rng))] += 1
    expected = np.array([float(pi[s]) for s in gen.space]) * trials
    assert stats.chisquare(counts, expected).pvalue > 1e-3


def test_ensemble_does_not_depend_on_worker_count():
    process = OpenSsepProcess(6, 2, 0.5, 0.5)

    def trial(rng):
        return gillespie(process, 5.0, rng).state

    one = run_ensemble(trial, 8, seed=3, workers=1, keep_samples=True)
    three = run_ensemble(trial, 8, seed=3, workers=3, keep_samples=True)
    assert np.array_equal(one.samples, three.samples)
    with pytest.raises(DomainError):
        run_ensemble(trial, 0, seed=3)


def test_boundary_events_account_for_particle_count():
    run = gillespie(OpenSsepProcess(6, 2, 0.5, 0.5), 20.0, np.random.default_rng(1))
    assert run.state.sum() == run.inflow
    assert run.state.min() >= 0 and run.state.max() <= 2
    run = gillespie(OpenAsepProcess(10, 0.3), 5.0, np.random.default_rng(2))
    assert run.state.sum() == run.inflow
    assert set(np.unique(run.state)) <= {0, 1}


def test_reference_special_values():
    assert density_profile(0.5, 0.0, 0.7) == 0.5
    assert_allclose(integrated_density(0.5, 0.0, 0.5), 0.5 * np.sqrt(1.0) / np.sqrt(np.pi))
    assert integrated_density(0.5, 0.3, 0.0) == 0
    assert hopf_cole_reference(-0.5, 0.0, 0.1) == 0
    assert hopf_cole_reference(-0.5, 1.0, 1.0) == 0
    assert_allclose(hopf_cole_ballistic(-0.5, 1.0, 0.1), 0.45)


def test_passage_probability_closed_form():
    assert_allclose(passage_probability(0.3, 0.8, 0.1), passage_quadrature(0.3, 0.8, 0.1), rtol=1e-7)
    assert_allclose(passage_probability(0.5, 1.2, 0.6), passage_quadrature(0.5, 1.2, 0.6), rtol=1e-7)


def test_hopf_cole_double_integral():
    q, zeta, tau = 0.1, -0.5, 1.0
    inner, _ = integrate.quad(lambda xi: passage_probability(xi, tau, q), 0, abs(zeta), epsabs=1e-12)
    assert_allclose(hopf_cole_reference(zeta, tau, q), (1 - q) * inner, rtol=1e-6)


def test_pde_residuals():
    grid = np.linspace(0.1, 1.0, 4)
    assert pde_residual("integrated_density", grid, grid, alpha=0.5) <= 1e-4
    coarse = np.linspace(0.2, 1.0, 3)
    assert pde_residual("hopf_cole_tail", coarse, coarse, q=0.3) <= 1e-4
    with pytest.raises(DomainError):
        pde_residual("burgers", grid, grid)


def test_neumann_slopes():
    assert abs(density_slope(0.5, 0.5) + 0.5) <= 1e-3
    assert abs(passage_limit(0.5, 0.1) - 1) <= 1e-3
    assert abs(hopf_cole_slope(0.5, 0.1) + 0.9) <= 1e-3


def test_dual_absorption_profile_limits():
    assert_allclose(dual_absorption_profile(5, 1, 0.5, 0.5, 0.0), 0)
    assert_allclose(dual_absorption_profile(5, 1, 0.5, 0.5, 2000.0), 1, atol=1e-6)
    profile = dual_absorption_profile(8, 2, 0.5, 0.5, 3.0)
    assert np.all(np.diff(profile) <= 1e-12)


def test_ssep_density_matches_finite_lattice_dual():
    result = ssep_hydro(0.5, m=2, gamma=0.5, chi=0.5, tau=0.5, L=16, trials=300, seed=5)
    row = result.row("density_finite_size")
    assert row.diff <= 5 * row.stderr + 0.02
    tail = result.row("integrated_density_finite_size")
    assert tail.diff <= 5 * tail.stderr + 0.05
    assert band_report(result, "density_finite_size", sigmas=5.0).params["L"] == 16


def test_ssep_runs_are_reproducible():
    first = ssep_hydro(0.5, chi=0.5, tau=0.25, L=9, trials=20, seed=21)
    second = ssep_hydro(0.5, chi=0.5, tau=0.25, L=9, trials=20, seed=21)
    assert [r.simulated for r in first.rows] == [r.simulated for r in second.rows]


def test_ssep_unknown_convention():
    with pytest.raises(DomainError):
        ssep_hydro(0.5, L=9, trials=2, convention="raw")


def test_ssep_stationary_moments():
    full = ssep_stationary(1.0, sites=(1, 2), n_sites=3, trials=20, seed=4)
    assert_allclose(full.row("moment").simulated, 1.0)
    half = ssep_stationary(0.5, sites=(2,), n_sites=3, trials=400, seed=4)
    row = half.row("moment")
    assert row.reference == 0.5
    assert row.diff <= 5 * row.stderr + 0.01
    with pytest.raises(DomainError):
        ssep_stationary(0.5, sites=(5,), n_sites=3)


def test_asep_hydro_small_run():
    result = asep_hydro(0.5, zeta=-0.5, tau=0.5, L=8, trials=30, seed=3)
    row = result.row("hopf_cole")
    assert row.simulated >= 1 / 8 - 1e-12
    assert np.isfinite(result.details["log10_estimate"])
    assert row.reference > 0
    with pytest.raises(DomainError):
        asep_hydro(1.0, L=8, trials=2)


def test_exact_tail_moment_matches_the_open_generator():
    q, n_sites, depth, t = Fraction(1, 2), 4, 2, 0.7
    gen = asep(n_sites, 1, q, boundary="enter_right")
    semigroup = expm(gen.to_numpy() * t)[gen.space.index((0,) * n_sites)]
    observable = np.array([2.0 ** sum(state[n_sites - depth:]) for state in gen.space])
    assert_allclose(asep_tail_moment(n_sites, 0.5, t, depth), semigroup @ observable, rtol=1e-8)
    assert asep_tail_moment(n_sites, 0.5, 0.0, depth) == pytest.approx(1.0)
    with pytest.raises(DomainError):
        asep_tail_moment(MAX_EXACT_SITES + 1, 0.5, 1.0, 2)


def test_small_asep_run_matches_the_exact_segment():
    result = asep_hydro(0.8, zeta=-0.5, tau=0.25, L=4, trials=4000, seed=3)
    row = result.row("hopf_cole_finite_size")
    assert row.diff <= 0.05 * row.reference
    assert row.diff <= 5 * row.stderr + 1e-3
    report = band_report(result, "hopf_cole_finite_size", tol=0.05, relative=True, sigmas=None)
    assert report.ok and not report.details["report_only"]
    with pytest.raises(KeyError):
        asep_hydro(0.5, zeta=-0.5, tau=0.5, L=8, trials=2).row("hopf_cole_finite_size")


def test_simulation_setup_validation():
    with pytest.raises(DomainError):
        SimSpec("ssep-open", {}, 1, 1.0, 10, 0).validate()
    with pytest.raises(DomainError):
        SimSpec("ssep-open", {}, 10, 1.0, 0, 0).validate()


def test_csv_and_plot_output(tmp_path):
    result = ssep_hydro(0.5, chi=0.5, tau=0.25, L=9, trials=10, seed=2)
    rows = write_hydro_csv(str(tmp_path / "ssep.csv"), [result])
    lines = (tmp_path / "ssep.csv").read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == len(rows) + 1 == 5
    path = plot_density_profile(str(tmp_path / "ssep.svg"), result)
    assert "<svg" in open(path).read()
