"""
Verification suites and the manager that runs them and writes their reports.
"""

from .base_suite import BaseSuite, Job
from .suites import QCombSuite, FusionSuite, DualitySuite, MeasuresSuite, VertexSuite, SUITES
from .suite_manager import SuiteManager, SuiteRun, JobResult, EXIT_OK, EXIT_FAILED, EXIT_USAGE
