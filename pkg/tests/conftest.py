"""Shared fixtures and the acceptance-criteria summary."""

from __future__ import annotations

import pytest

from gradedpi import FgAbelianGroup

# -- acceptance report -------------------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance.py" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        _ACCEPTANCE[int(name.split("_")[2])] = ("PASS" if report.passed else "FAIL", name)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        status, name = _ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  ({name})")


# -- groups ------------------------------------------------------------------------------


@pytest.fixture
def Z():
    return FgAbelianGroup(1, ())


@pytest.fixture
def Z2sq():
    return FgAbelianGroup(0, (2, 2))


@pytest.fixture
def ZxZ2sq():
    return FgAbelianGroup(1, (2, 2))
