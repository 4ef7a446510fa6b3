from pathlib import Path

import pytest

from outageflow.core import Instance, Network

FIXTURES = Path(__file__).parent / "fixtures"


# ---------------------------------------------------------------------------
# named instances


@pytest.fixture
def I1():
    net = Network.from_arcs([("a", "s", "v", 4), ("b", "s", "v", 5), ("c", "v", "t", 7)])
    return Instance.single_jobs(net, ["a", "b"], 2)


@pytest.fixture
def I2():
    net = Network.from_arcs(
        [("a", "s", "v", 4), ("b", "s", "v", 1), ("c", "v", "t", 2), ("d", "v", "t", 2)]
    )
    return Instance.single_jobs(net, ["a", "b", "c"], 3)


@pytest.fixture
def I2b():
    net = Network.from_arcs(
        [("a", "s", "v", 4), ("b", "s", "v", 1), ("c", "v", "t", 2), ("d", "v", "t", 3)]
    )
    return Instance.single_jobs(net, ["a", "b", "c"], 3)


@pytest.fixture
def I3():
    net = Network.from_arcs([("a", "s", "v", 1), ("b", "s", "v", 1), ("c", "v", "t", 1)])
    return Instance.single_jobs(net, ["a", "b"], 2)


@pytest.fixture
def I6():
    net = Network.from_arcs(
        [
            ("su", "s", "u", 1),
            ("sv", "s", "v", 1),
            ("ut", "u", "t", 1),
            ("vt", "v", "t", 1),
            ("uv", "u", "v", 1),
        ]
    )
    return Instance.single_jobs(net, ["su", "vt"], 2)


# ---------------------------------------------------------------------------
# acceptance reporting: one line per criterion in the terminal summary

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    key = (number, title)
    if rep.when == "setup" and rep.failed or rep.when == "call":
        prev = _criteria.get(key, True)
        _criteria[key] = prev and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_criteria.items()):
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
