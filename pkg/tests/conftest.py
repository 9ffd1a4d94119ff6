import itertools

import networkx as nx
import pytest
from hypothesis import strategies as st

from kempe_reconfig.colouring import Colouring
from kempe_reconfig.graph import Graph
from kempe_reconfig.lattices import triangular_prism

# Two prism 3-colourings in different Kempe classes. Vertices: inner triangle a=0, b=1, c=2,
# outer triangle a2=3, b2=4, c2=5, matching a-a2, b-b2, c-c2.
PRISM_LEFT = Colouring((1, 3, 2, 2, 1, 3), 3)
PRISM_RIGHT = Colouring((3, 2, 1, 2, 1, 3), 3)


@pytest.fixture
def prism():
    return triangular_prism()


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, mask) if keep])


def to_nx(G):
    H = nx.Graph()
    H.add_nodes_from(range(G.n))
    H.add_edges_from(G.edges())
    return H


def brute_force_colourings(G, k):
    """Every map V -> {1..k} filtered by properness."""
    return [
        cols
        for cols in itertools.product(range(1, k + 1), repeat=G.n)
        if all(cols[u] != cols[v] for u, v in G.edges())
    ]


# acceptance results, printed as a block at the end of the session
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        ok, text = ACCEPTANCE[num]
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {text}")
