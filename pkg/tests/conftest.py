"""Emit one PASS/FAIL line per acceptance criterion after the run."""

import re

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    outcomes = {}
    for status in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(status, []):
            match = _CRITERION.search(getattr(report, "nodeid", ""))
            if match:
                k = int(match.group(1))
                word = "PASS" if status == "passed" else "FAIL"
                outcomes[k] = word
    if outcomes:
        terminalreporter.write_sep("-", "acceptance criteria")
        for k in sorted(outcomes):
            terminalreporter.write_line(f"CRITERION {k} {outcomes[k]}")
