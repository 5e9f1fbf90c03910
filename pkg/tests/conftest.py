import pytest

from soldyn.examples import golden_mean, rotation4, unipotent2
from soldyn.exactlin import RatMatrix

_acceptance = []


@pytest.fixture
def golden():
    return golden_mean()


@pytest.fixture
def rot4():
    return rotation4()


@pytest.fixture
def unip():
    return unipotent2()


@pytest.fixture
def diag21():
    return RatMatrix.diag(2, 1)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    _acceptance.append((number, title, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, outcome in sorted(_acceptance):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
