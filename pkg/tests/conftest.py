import itertools

import networkx as nx
import pytest

from epr_universe.universe import EprComplex, all_complexes, make_complex


@pytest.fixture(scope="session")
def universe4():
    return all_complexes(4)


def to_nx(e: EprComplex) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(e.objects)
    g.add_edges_from(e.edges)
    return g


def induced_oracle(e: EprComplex, f: EprComplex) -> bool:
    """Induced-subgraph test written against networkx, independent of leq."""
    if not set(e.objects) <= set(f.objects):
        return False
    sub = to_nx(f).subgraph(e.objects)
    return {frozenset(x) for x in sub.edges} == {frozenset(x) for x in e.edges}


def cx(objects, edges=(), n_phi=None):
    return make_complex(objects, edges, n_phi)


def pairs(objs):
    return list(itertools.combinations(objs, 2))


# acceptance results, filled by tests/test_acceptance.py and printed at the end
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[number])
