import json

import pytest

from app.qcomb import ALPHA_POINTS, Q_POINTS
from app.settings import SettingsManager
from app.utils.errors import DomainError
from app.utils.reports import CheckReport, Witness
from app.verification import (
    BaseSuite, Job, SuiteManager, FusionSuite, VertexSuite, QCombSuite, DualitySuite, EXIT_OK, EXIT_FAILED,
)


def _good():
    return CheckReport("identity", passed=True, anchor="toy")


def _known_false():
    return CheckReport("known_false", passed=False, expect_fail=True, witnesses=[Witness("a", "b", "1", "2")])


def _broken():
    raise ValueError("no such state")


def _failing():
    return CheckReport("wrong", passed=False, witnesses=[Witness("a", "b", "1", "0")])


class ToySuite(BaseSuite):
    def __init__(self, settings_manager, job_list):
        super().__init__(settings_manager)
        self.job_list = job_list

    def jobs(self):
        return self.job_list


def _manager(job_list):
    settings = SettingsManager()
    manager = SuiteManager(settings)
    manager.suites = {"toy": ToySuite(settings, job_list)}
    return manager


def test_available_suites():
    manager = SuiteManager(SettingsManager())
    assert manager.get_available_suites() == ["qcomb", "fusion", "duality", "measures", "vertex", "all"]
    assert QCombSuite(SettingsManager()).name == "QCombSuite"
    with pytest.raises(DomainError):
        manager.run("nosuch")


def test_expected_failures_and_report_only_pass():
    manager = _manager([Job("good", _good), Job("negative", _known_false),
                        Job("observed", lambda: [_failing()], report_only=True)])
    run = manager.run("toy", workers=2)
    assert run.exit_code == EXIT_OK
    summary = run.summary()
    assert summary["checks"] == 2
    assert summary["expected_failures"] == 1
    assert summary["report_only"] == 1


@pytest.mark.parametrize("bad", [_failing, _broken])
def test_failures_and_errors_decide_the_exit_code(bad):
    run = _manager([Job("good", _good), Job("bad", bad)]).run("toy", workers=1)
    assert run.exit_code == EXIT_FAILED


def test_errored_job_is_recorded():
    run = _manager([Job("bad", _broken)]).run("toy")
    assert run.summary()["errored_jobs"] == ["toy:bad"]
    assert run.results[0].error.startswith("ValueError")


def test_json_and_csv_reports(tmp_path):
    manager = _manager([Job("good", _good), Job("bad", _broken)])
    run = manager.run("toy")
    path = manager.write_report(run, str(tmp_path / "toy.json"), "json")
    payload = json.load(open(path))
    assert payload["exit_code"] == EXIT_FAILED
    assert payload["version"]
    assert payload["params"]["q"] == "1/2"
    assert payload["jobs"][0]["reports"][0]["anchor"] == "toy"
    path = manager.write_report(run, str(tmp_path / "toy.csv"), "csv")
    lines = open(path).read().splitlines()
    assert lines[0].startswith("suite,job,name")
    assert len(lines) == 3


def test_projection_job():
    suite = FusionSuite(SettingsManager({"sites": 3, "species": 2}))
    job = next(j for j in suite.jobs() if j.name == "projections")
    reports = job.run()
    assert len(reports) == 4
    assert all(r.passed for r in reports)


def test_vertex_row_sum_job():
    suite = VertexSuite(SettingsManager({"l": 2, "m": "2"}))
    job = next(j for j in suite.jobs() if j.name == "r22")
    assert job.run().passed


def test_q_jackson_job_is_asserted():
    suite = VertexSuite(SettingsManager())
    job = next(j for j in suite.jobs() if j.name == "q_jackson")
    assert not job.report_only
    reports = job.run()
    assert len(reports) == 15
    assert all(r.ok for r in reports)
    assert sum(not r.expect_fail for r in reports) == 3


def test_sweeps_reach_their_full_sizes():
    settings = SettingsManager({"q": Q_POINTS[0], "alpha": ALPHA_POINTS[0]})
    prev = next(j for j in QCombSuite(settings).jobs() if j.name == "prev").run()
    assert len(prev.details["parts"]) == 36 * len(Q_POINTS) * len(ALPHA_POINTS)
    schutz = next(j for j in DualitySuite(settings).jobs() if j.name == "schutz")
    assert len(schutz.run()) == 21 + 20 + 1
