import networkx as nx
import pytest

from ggt.graphs import Graph


def from_networkx(h):
    nodes = sorted(h.nodes())
    idx = {v: i for i, v in enumerate(nodes)}
    return Graph.build(len(nodes), [(idx[u], idx[v]) for u, v in h.edges()])


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        name = report.nodeid.rsplit("::", 1)[-1]
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_ACCEPTANCE):
        verdict = "PASS" if _ACCEPTANCE[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{name}: {verdict}")


@pytest.fixture(scope="session")
def atlas_connected():
    """All connected graphs on 1..7 vertices, one per isomorphism class."""
    out = []
    for h in nx.graph_atlas_g()[1:]:
        if h.number_of_nodes() >= 1 and nx.is_connected(h):
            out.append(from_networkx(h))
    return out
