"""
Check reports and the report writers used by every verification suite
"""

import csv
import json
import logging
import os
import tempfile
from dataclasses import dataclass, field, asdict

from .sparse import fstr

logger = logging.getLogger(__name__)

MAX_WITNESSES = 5


@dataclass
class Witness:
    """One offending entry: where it is and the two sides that disagree"""
    row: str
    col: str
    lhs: str
    rhs: str


@dataclass
class CheckReport:
    """
    Outcome of a single claim.

    ``passed`` is the raw truth of the identity. ``expect_fail`` marks
    claims that are known to be false; for those the suite is satisfied
    when ``passed`` is False and a witness was found.
    """
    name: str
    passed: bool
    anchor: str = ""
    regime: str = ""
    expect_fail: bool = False
    params: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        if self.expect_fail:
            return not self.passed and bool(self.witnesses)
        return self.passed

    def to_dict(self):
        data = asdict(self)
        data["params"] = {k: fstr(v) if not isinstance(v, (str, list, tuple, dict)) else v
                          for k, v in self.params.items()}
        data["ok"] = self.ok
        return data


def _label(labels, idx):
    if labels is None:
        return str(idx)
    return str(labels[idx])


def compare_matrices(name, lhs, rhs, row_labels=None, col_labels=None, mask=None,
                     tol=None, anchor="", regime="closed", expect_fail=False, params=None):
    """
    Compare two sparse matrices entrywise.

    Args:
        mask: optional predicate ``mask(i, j)``; only entries where it is
            True are compared
        tol: None for exact comparison, otherwise an absolute tolerance

    Returns:
        CheckReport with up to MAX_WITNESSES witnesses
    """
    diff = lhs - rhs
    witnesses = []
    checked = 0
    failed = 0
    for i, j, v in diff.entries():
        if mask is not None and not mask(i, j):
            continue
        if tol is not None and abs(v) <= tol:
            continue
        failed += 1
        if len(witnesses) < MAX_WITNESSES:
            witnesses.append(Witness(_label(row_labels, i), _label(col_labels, j),
                                     fstr(lhs[i, j]), fstr(rhs[i, j])))
    if mask is not None:
        checked = sum(1 for i in range(lhs.n_rows) for j in range(lhs.n_cols) if mask(i, j))
    else:
        checked = lhs.n_rows * lhs.n_cols
    report = CheckReport(name=name, passed=failed == 0, anchor=anchor, regime=regime,
                         expect_fail=expect_fail, params=dict(params or {}),
                         witnesses=witnesses,
                         details={"entries_checked": checked, "entries_failed": failed})
    log = logger.warning if not report.ok else logger.debug
    log(f"{name} [{regime}]: passed={report.passed} checked={checked} failed={failed}")
    return report


def scalar_report(name, lhs, rhs, anchor="", tol=None, params=None, expect_fail=False):
    """Report for a single scalar identity"""
    if tol is None:
        passed = lhs == rhs
    else:
        passed = abs(lhs - rhs) <= tol
    witnesses = [] if passed else [Witness("-", "-", fstr(lhs), fstr(rhs))]
    return CheckReport(name=name, passed=passed, anchor=anchor, expect_fail=expect_fail,
                       params=dict(params or {}), witnesses=witnesses)


def combine(name, reports, anchor="", regime="", expect_fail=False, params=None):
    """Fold several reports into one; witnesses are taken from the failing parts"""
    reports = list(reports)
    passed = all(r.passed for r in reports)
    witnesses = []
    for r in reports:
        if not r.passed:
            witnesses.extend(r.witnesses)
    return CheckReport(name=name, passed=passed, anchor=anchor, regime=regime,
                       expect_fail=expect_fail, params=dict(params or {}),
                       witnesses=witnesses[:MAX_WITNESSES],
                       details={"parts": [r.name for r in reports],
                                "failed_parts": [r.name for r in reports if not r.passed]})


def _atomic_write(path, write_fn, mode="w"):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, mode, newline="") as f:
            write_fn(f)
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def write_json(path, payload):
    """Write a JSON document atomically"""
    _atomic_write(path, lambda f: json.dump(payload, f, indent=2, default=str))
    logger.info(f"Wrote report {path}")


def write_csv(path, header, rows):
    """Write a CSV file atomically"""
    def _write(f):
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    _atomic_write(path, _write)
    logger.info(f"Wrote table {path}")
