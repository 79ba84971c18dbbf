"""
Main application entry point
"""

import argparse
import logging
import sys

import config
from app.hydrosim import (
    ASEP_ANCHOR, SSEP_ANCHOR, asep_hydro, band_report, ssep_hydro, ssep_stationary, write_hydro_csv,
)
from app.settings.settings_manager import SettingsManager
from app.utils.errors import DomainError, ParameterError
from app.utils.output_paths import get_output_path
from app.verification import EXIT_FAILED, EXIT_OK, EXIT_USAGE, SUITES, SuiteManager
from app.vertexweights import export_weight_table

logger = logging.getLogger(__name__)

PROCESSES = ("ssep-open", "ssep-stationary", "asep-open")

# Scale of the full acceptance runs when L and trials are not given
PROCESS_DEFAULTS = {
    "ssep-open": {"L": 200, "trials": 20000, "m": (2,)},
    "ssep-stationary": {"L": 200, "trials": 2000, "m": (1,)},
    "asep-open": {"L": 400, "trials": 10000, "tau": 1.0},
}

# Monte Carlo bands with fewer trials are printed but do not set the exit code
MIN_ASSERT_TRIALS = 1000


def setup_logging():
    """Log to the configured file and to the console"""
    log_file = get_output_path(config.get_log_file())
    logging.basicConfig(
        level=config.get_log_level(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.FileHandler(log_file),
            logging.StreamHandler()
        ]
    )


def handle_exception(exc_type, exc_value, exc_traceback):
    """Global exception handler for unhandled exceptions"""
    logger.critical("Uncaught exception", exc_info=(exc_type, exc_value, exc_traceback))
    sys.__excepthook__(exc_type, exc_value, exc_traceback)


def _add_common_flags(parser):
    parser.add_argument("--q", help="asymmetry, a rational such as 1/2 (default 1/2)")
    parser.add_argument("--alpha", help="dynamic parameter or reservoir density (default 1/2)")
    parser.add_argument("--sites", type=int, help="lattice length for the exact checks (default 4)")
    parser.add_argument("--m", help="site capacities as a comma list (default 2,1)")
    parser.add_argument("--species", type=int, help="number of species (default 2)")
    parser.add_argument("--sector", help="particle counts per species as a comma list")
    parser.add_argument("--seed", type=int, help=f"random seed (default {config.get_default_seed()})")
    parser.add_argument("--workers", type=int, help="worker threads (default FUSIONLAB_THREADS)")
    parser.add_argument("--out", help="report path, relative to FUSIONLAB_OUTPUT_DIR")
    parser.add_argument("--format", choices=("json", "csv"), help="report format (default json)")


def build_parser():
    parser = argparse.ArgumentParser(prog="fusionlab", description="Exact and Monte Carlo checks for fused "
                                     "multi-species exclusion processes.")
    parser.add_argument("--version", action="version", version=f"{config.APP_NAME} {config.VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="run a verification suite")
    verify.add_argument("suite", choices=list(SUITES) + ["all"])
    verify.add_argument("--l", type=int, help="horizontal spin of the vertex weights (default 2)")
    _add_common_flags(verify)

    simulate = commands.add_parser("simulate", help="Monte Carlo run of an open process")
    simulate.add_argument("process", choices=PROCESSES)
    simulate.add_argument("--L", type=int, help="scaling parameter (default 200, asep-open 400)")
    simulate.add_argument("--tau", type=float, help="macroscopic time (default 0.5, asep-open 1)")
    simulate.add_argument("--chi", type=float, help="macroscopic position for ssep-open (default 0.5)")
    simulate.add_argument("--zeta", type=float, help="macroscopic position for asep-open (default -0.5)")
    simulate.add_argument("--gamma", type=float, help="boundary rate scale, 0 < gamma <= 1/2 (default 1/2)")
    simulate.add_argument("--trials", type=int, help="independent runs (default 20000, asep-open 10000)")
    simulate.add_argument("--convention", choices=("unit_walk", "literal"), help="bulk rate normalization")
    simulate.add_argument("--plot", action="store_true", help="also write an SVG profile (ssep-open)")
    _add_common_flags(simulate)

    weights = commands.add_parser("weights", help="export a fused vertex weight table")
    weights.add_argument("--l", type=int, help="horizontal spin (default 2)")
    weights.add_argument("--m", help="vertical spin (default 2)")
    weights.add_argument("--lambda", dest="lambda_", type=float, help="dynamical parameter (default 0.23)")
    weights.add_argument("--w", type=float, help="spectral parameter (default 0.37)")
    weights.add_argument("--eta", type=float, help="crossing parameter (default 0.11)")
    weights.add_argument("--out", help="CSV path")
    return parser


def settings_from_args(args):
    """A SettingsManager carrying every flag that was given"""
    overrides = {key: value for key, value in vars(args).items()
                 if key not in ("command", "suite", "process", "plot", "lambda_") and value is not None}
    if getattr(args, "lambda_", None) is not None:
        overrides["lambda"] = args.lambda_
    for key, value in PROCESS_DEFAULTS.get(getattr(args, "process", None), {}).items():
        overrides.setdefault(key, value)
    return SettingsManager(overrides)


def run_verify(settings_manager, suite_id):
    """
    Run a suite and write its report

    Returns:
        int: exit code
    """
    manager = SuiteManager(settings_manager)
    run = manager.run(suite_id)
    path = manager.write_report(run, settings_manager.get_setting("out"))
    summary = run.summary()
    print(f"{summary['ok']}/{summary['checks']} checks ok ({summary['expected_failures']} expected failures, "
          f"{summary['report_only']} report-only) -> {path}")
    for name in summary["failed"] + summary["errored_jobs"]:
        print(f"FAILED {name}")
    return run.exit_code


def run_simulate(settings_manager, process, plot=False):
    """
    Run one Monte Carlo experiment and write its CSV (and SVG) artifacts

    Returns:
        int: exit code
    """
    get = settings_manager.get_setting
    small = get("trials") < MIN_ASSERT_TRIALS
    if process == "ssep-open":
        result = ssep_hydro(float(get("alpha")), m=get("m")[0], gamma=get("gamma"), chi=get("chi"), tau=get("tau"),
                            L=get("L"), trials=get("trials"), seed=get("seed"), convention=get("convention"),
                            workers=get("workers"))
        reports = [band_report(result, "density", tol=0.03, anchor=SSEP_ANCHOR, report_only=small),
                   band_report(result, "density_finite_size", anchor=SSEP_ANCHOR, report_only=small)]
    elif process == "ssep-stationary":
        n_sites = get("sites")
        result = ssep_stationary(float(get("alpha")), sites=tuple(range(1, min(n_sites, 2) + 1)), n_sites=n_sites,
                                 trials=get("trials"), m=get("m")[0], gamma=get("gamma"), seed=get("seed"),
                                 convention=get("convention"), workers=get("workers"))
        reports = [band_report(result, "moment", anchor=SSEP_ANCHOR, report_only=small)]
    else:
        result = asep_hydro(float(get("q")), zeta=get("zeta"), tau=get("tau"), L=get("L"), trials=get("trials"),
                            seed=get("seed"), workers=get("workers"))
        reports = [band_report(result, "hopf_cole", tol=0.05, relative=True, sigmas=None, anchor=ASEP_ANCHOR,
                               report_only=True)]
        if any(row.observable == "hopf_cole_finite_size" for row in result.rows):
            reports.append(band_report(result, "hopf_cole_finite_size", tol=0.05, relative=True, sigmas=None,
                                       anchor=ASEP_ANCHOR, report_only=small))

    csv_path = get_output_path(get("out") or f"{process}.csv")
    write_hydro_csv(csv_path, [result])
    print(f"Wrote {csv_path}")
    if plot and process == "ssep-open":
        from app.hydrosim.plots import plot_density_profile
        svg_path = csv_path[:-4] + ".svg" if csv_path.endswith(".csv") else csv_path + ".svg"
        plot_density_profile(svg_path, result)
        print(f"Wrote {svg_path}")
    for report in reports:
        label = "report only" if report.details.get("report_only") else ("ok" if report.ok else "outside band")
        print(f"{report.name}: {label}")
    if any(not report.details.get("report_only") and not report.ok for report in reports):
        return EXIT_FAILED
    return EXIT_OK


def run_weights(settings_manager):
    get = settings_manager.get_setting
    l, m = get("l"), get("m")[0]
    path = get_output_path(get("out") or f"weights_R{l}{m}.csv")
    rows = export_weight_table(path, l, m, get("lambda"), get("w"), get("eta"))
    print(f"Wrote {len(rows)} weights to {path}")
    return EXIT_OK


def main(argv=None):
    """Main entry point of the application"""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        setup_logging()
        sys.excepthook = handle_exception
        logger.info(f"Starting {config.APP_NAME} {config.VERSION}: {args.command}")

        settings_manager = settings_from_args(args)
        if args.command == "verify":
            return run_verify(settings_manager, args.suite)
        if args.command == "simulate":
            return run_simulate(settings_manager, args.process, args.plot)
        if args.command == "weights":
            if args.m is None:
                settings_manager.set_setting("m", "2")
            return run_weights(settings_manager)
        parser.print_usage()
        return EXIT_USAGE
    except (DomainError, ParameterError) as e:
        logger.error(f"Invalid parameters: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as e:
        logger.critical(f"Unhandled exception in main: {e}", exc_info=True)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
