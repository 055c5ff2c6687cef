from __future__ import annotations

import pytest

from geodisjoint import build_graph, convex_complete, convex_cycle, extremal_gnk


@pytest.fixture
def c4():
    return convex_cycle(4)


@pytest.fixture
def c5():
    return convex_cycle(5)


@pytest.fixture
def k6():
    return convex_complete(6)


@pytest.fixture
def g11_2():
    return extremal_gnk(11, 2)


@pytest.fixture
def g12_3():
    return extremal_gnk(12, 3)


@pytest.fixture
def inner_star():
    # centre (0,0) sits inside the triangle of its leaves
    return build_graph([(0, 0), (1, 0), (0, 1), (-1, -1)], [(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def single_edge():
    return build_graph([(0, 0), (3, 1)], [(0, 1)])


# --- acceptance summary: one line per criterion -------------------------------------

_CRITERIA: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.skipped:
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "failed": []})
    if rep.failed:
        entry["ok"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry["ok"] else "FAIL"
        line = f"criterion {number:>2}: {status}  {entry['title']}"
        if entry["failed"]:
            line += f"  [failing: {', '.join(entry['failed'])}]"
        terminalreporter.write_line(line)
