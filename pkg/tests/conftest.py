import os
from pathlib import Path

import networkx as nx
import pytest

from oddminor.graph import Graph
from oddminor.io import read_graph6_lines

DATA = Path(__file__).parent / "data"
EXHAUSTIVE = os.environ.get("ODDMINOR_EXHAUSTIVE") == "1"


def graphs_upto(n_max, connected=False):
    """Every graph on 1..n_max vertices up to isomorphism (n_max <= 8)."""
    assert n_max <= 8
    for G in nx.graph_atlas_g():
        k = G.number_of_nodes()
        if 1 <= k <= min(n_max, 7) and (not connected or nx.is_connected(G)):
            yield Graph.from_networkx(G)
    if n_max >= 8:
        for g in read_graph6_lines(DATA / "graphs8.g6"):
            if not connected or nx.is_connected(g.to_networkx()):
                yield g


@pytest.fixture(scope="session")
def small_graphs():
    return list(graphs_upto(6))


# ----------------------------------------------------------------------
# one pass/fail line per acceptance criterion

_criteria: dict[int, tuple[str, str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    number, title = mark.args
    note = getattr(item, "criterion_note", "")
    _criteria[number] = ("PASS" if rep.passed else "FAIL", title, note)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title, note = _criteria[number]
        line = f"criterion {number:2d}: {status}  {title}"
        terminalreporter.write_line(line + (f"  [{note}]" if note else ""))
