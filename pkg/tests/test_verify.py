"""The self-verification suite itself."""

import pytest

from dyadicmf.verify import CheckResult, all_passed, run_checks


def test_quick_suite_passes():
    lines = []
    results = run_checks("quick", emit=lines.append)
    assert all_passed(results)
    assert len(lines) == len(results)
    for line in lines:
        assert line.startswith("[PASS]")
        assert "tolerance" in line


def test_every_check_reports_tolerance_and_observation():
    results = run_checks("quick", emit=lambda _: None)
    for r in results:
        assert r.tolerance
        assert r.observed


def test_level_validation():
    with pytest.raises(ValueError):
        run_checks("paranoid")


def test_failure_renders_as_fail_line():
    r = CheckResult("demo", False, "1e-9", "2e-9", "broken")
    assert r.line().startswith("[FAIL] demo")
    assert not all_passed([r])
