"""
Seeded Monte Carlo for the open-boundary processes and the limit profiles
they are compared with.
"""

from .gillespie import (
    LatticeProcess, Run, EnsembleStats, MAX_TOTAL_RATE, gillespie, simulate_generator, trial_generators,
    run_ensemble,
)
from .processes import CONVENTIONS, OpenSsepProcess, OpenAsepProcess, tail_counts, upper_tail_counts
from .reference import (
    density_profile, integrated_density, drift_and_variance, first_passage_density, passage_probability,
    passage_quadrature, passage_complement, hopf_cole_reference, hopf_cole_ballistic, hopf_cole_tail,
    pde_residual, density_slope, passage_limit, hopf_cole_slope,
)
from .experiments import (
    SimSpec, ResultRow, HydroResult, CSV_HEADER, SSEP_ANCHOR, ASEP_ANCHOR, dual_absorption_profile,
    MAX_EXACT_SITES, ssep_hydro, ssep_stationary, asep_hydro, asep_tail_moment, band_report, write_hydro_csv,
)
