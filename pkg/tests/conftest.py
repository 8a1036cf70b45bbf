import re

import pytest

from qopuc.qcore import QBParams

_ACCEPTANCE = {}
_NAME = re.compile(r"test_criterion_(\d+)_")


@pytest.fixture
def desk():
    """Desk parameters ``q = 0.5``, ``b = 0.8 - 0.6i``."""
    return QBParams.from_b(0.5, 0.8 - 0.6j)


def pytest_runtest_logreport(report):
    m = _NAME.search(report.nodeid)
    if m is None or "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or report.outcome != "passed":
        key = int(m.group(1))
        prev = _ACCEPTANCE.get(key, "PASS")
        _ACCEPTANCE[key] = "PASS" if prev == "PASS" and report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {key:2d}: {_ACCEPTANCE[key]}")
