"""
Suite manager to build, run and report the verification suites
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import config
from app.generators import asep
from app.utils.errors import DomainError
from app.utils.output_paths import get_output_path
from app.utils.reports import CheckReport, write_csv, write_json
from .suites import SUITES

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

CSV_HEADER = ["suite", "job", "name", "anchor", "regime", "expect_fail", "report_only", "passed", "ok", "witnesses"]


@dataclass
class JobResult:
    suite: str
    job: str
    report_only: bool
    reports: list = field(default_factory=list)
    error: str = None

    @property
    def ok(self):
        if self.report_only:
            return True
        return self.error is None and all(r.ok for r in self.reports)


@dataclass
class SuiteRun:
    suites: list
    results: list
    params: dict

    @property
    def exit_code(self):
        return EXIT_OK if all(r.ok for r in self.results) else EXIT_FAILED

    def summary(self):
        counted = [r for res in self.results if not res.report_only for r in res.reports]
        return {
            "checks": len(counted),
            "ok": sum(r.ok for r in counted),
            "expected_failures": sum(r.expect_fail and r.ok for r in counted),
            "report_only": sum(len(res.reports) for res in self.results if res.report_only),
            "errored_jobs": [f"{res.suite}:{res.job}" for res in self.results if res.error is not None],
            "failed": [f"{res.suite}:{r.name}" for res in self.results if not res.report_only
                       for r in res.reports if not r.ok],
        }


def _as_reports(outcome):
    if isinstance(outcome, CheckReport):
        return [outcome]
    return list(outcome)


class SuiteManager:
    """
    Manager class for the verification suites
    """

    def __init__(self, settings_manager):
        """
        Initialize the suite manager

        Args:
            settings_manager: Settings manager instance
        """
        self.settings_manager = settings_manager
        self.suites = {}
        self.initialize_suites()

    def initialize_suites(self):
        """Instantiate every registered suite"""
        logger.info("Initializing verification suites")
        self.suites = {}
        for suite_id, suite_class in SUITES.items():
            try:
                self.suites[suite_id] = suite_class(self.settings_manager)
            except Exception as e:
                logger.error(f"Failed to initialize suite {suite_id}: {str(e)}")

    def get_available_suites(self):
        """Get a list of the available suite ids, "all" last"""
        return list(self.suites.keys()) + ["all"]

    def _resolve(self, suite_id):
        if suite_id == "all":
            return list(self.suites.keys())
        if suite_id not in self.suites:
            available = ", ".join(self.get_available_suites())
            raise DomainError(f"Unknown suite {suite_id!r}, available: {available}")
        return [suite_id]

    def _run_job(self, suite_id, job):
        result = JobResult(suite_id, job.name, job.report_only)
        try:
            result.reports = _as_reports(job.run())
            for report in result.reports:
                report.details.setdefault("report_only", job.report_only)
                if report.expect_fail and report.passed:
                    logger.warning(f"{suite_id}:{report.name} was expected to fail but passed")
            logger.info(f"{suite_id}:{job.name}: {sum(r.ok for r in result.reports)}/{len(result.reports)} ok"
                        + (" (report only)" if job.report_only else ""))
        except Exception as e:
            result.error = f"{type(e).__name__}: {e}"
            logger.critical(f"{suite_id}:{job.name} raised {result.error}", exc_info=True)
        return result

    def _check_rates(self):
        """The two-site ASEP at the configured q; raises ParameterError on negative rates"""
        asep(2, 1, self.settings_manager.get_setting("q"))

    def run(self, suite_id, workers=None):
        """
        Run one suite, or all of them

        Args:
            suite_id: a suite id or "all"
            workers: thread count (default: the workers setting)

        Returns:
            SuiteRun

        Raises:
            DomainError: unknown suite id
            ParameterError: the configured q gives negative jump rates
        """
        suite_ids = self._resolve(suite_id)
        self._check_rates()
        tasks = [(sid, job) for sid in suite_ids for job in self.suites[sid].jobs()]
        workers = workers or self.settings_manager.get_setting("workers") or config.get_thread_count()
        logger.info(f"Running {len(tasks)} jobs from {', '.join(suite_ids)} on {workers} worker(s)")

        if workers == 1:
            results = [self._run_job(sid, job) for sid, job in tasks]
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                results = list(pool.map(lambda task: self._run_job(*task), tasks))

        run = SuiteRun(suite_ids, results, self.settings_manager.as_params())
        summary = run.summary()
        logger.info(f"Verification finished: {summary['ok']}/{summary['checks']} ok, "
                    f"{len(summary['errored_jobs'])} errored, exit code {run.exit_code}")
        return run

    def write_report(self, run, path=None, fmt=None):
        """
        Write the run as JSON or CSV

        Args:
            run: SuiteRun
            path: output path (default: verify_<suites>.<format> in the output directory)
            fmt: "json" or "csv" (default: the format setting)

        Returns:
            str: the written path
        """
        fmt = fmt or self.settings_manager.get_setting("format")
        path = get_output_path(path or f"verify_{'_'.join(run.suites)}.{fmt}")
        if fmt == "csv":
            rows = [[res.suite, res.job, r.name, r.anchor, r.regime, r.expect_fail, res.report_only, r.passed,
                     r.ok, "; ".join(f"{w.row}|{w.col}: {w.lhs} != {w.rhs}" for w in r.witnesses)]
                    for res in run.results for r in res.reports]
            rows.extend([res.suite, res.job, "", "", "", False, res.report_only, False, False, res.error]
                        for res in run.results if res.error is not None)
            write_csv(path, CSV_HEADER, rows)
        else:
            write_json(path, {
                "tool": config.APP_NAME,
                "version": config.VERSION,
                "suites": run.suites,
                "params": run.params,
                "exit_code": run.exit_code,
                "summary": run.summary(),
                "jobs": [{"suite": res.suite, "job": res.job, "report_only": res.report_only, "ok": res.ok,
                          "error": res.error, "reports": [r.to_dict() for r in res.reports]}
                         for res in run.results],
            })
        return path
