"""Runs acceptance criteria 1-14 once and reports one line per criterion.

Run with ``pytest -s tests/test_acceptance.py`` to see the PASS/FAIL lines.
"""

from pathlib import Path

import pytest

from qwedge.acceptance import CHECKS, run_all

ARTIFACTS = Path(__file__).resolve().parent.parent / "artifacts"


@pytest.fixture(scope="module")
def results():
    res = {r.number: r for r in run_all(archive_dir=ARTIFACTS)}
    print()
    for r in res.values():
        print(r.line())
    return res


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"criterion-{c[0]:02d}" for c in CHECKS])
def test_criterion(results, number):
    r = results[number]
    # criterion 13 is informational, but a crash there still fails
    assert r.passed, r.line()
    if not r.gating:
        assert (ARTIFACTS / "probe_report.txt").exists()
