import numpy as np
import pytest

from gfparadox import AttributeTable, build_graph, degree_table

_ACCEPTANCE = []


def record_criterion(number, title, passed, detail=""):
    _ACCEPTANCE.append((number, title, bool(passed), detail))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{mark}] AC{number:>2} {title}  {detail}")


@pytest.fixture
def star():
    return build_graph([(0, 1), (0, 2), (0, 3)])


@pytest.fixture
def path3():
    return build_graph([(0, 1), (1, 2)])


def table(name, values, missing=None):
    return AttributeTable(name, np.asarray(values, dtype=float), missing)


def naive_adjacency(graph):
    """Plain dict-of-sets adjacency rebuilt from the canonical edge list."""
    adj = {i: set() for i in range(graph.node_count)}
    for u, v in graph.edges().tolist():
        adj[u].add(v)
        adj[v].add(u)
    return adj


__all__ = ["record_criterion", "table", "naive_adjacency", "degree_table"]
