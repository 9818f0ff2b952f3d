import pytest

from kakeyaplanes.gf import field_of_order
from kakeyaplanes.plane import desarguesian_affine

_acceptance = []


@pytest.fixture
def ag():
    """``ag(q)`` -> AG(2, q)."""
    return lambda q: desarguesian_affine(field_of_order(q))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    label = dict(report.user_properties).get("criterion")
    if label is not None:
        _acceptance.append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
