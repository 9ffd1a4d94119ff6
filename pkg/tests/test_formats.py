import json

import pytest

from kempe_reconfig.colouring import Colouring, ColouringError
from kempe_reconfig.formats import (
    format_edge_list,
    parse_edge_list,
    reconfig_to_dot,
    to_dot,
    witness_from_json,
    witness_to_json,
)
from kempe_reconfig.graph import GraphError
from kempe_reconfig.kempe import are_kempe_equivalent, build_reconfig_graph
from kempe_reconfig.lattices import cycle, kagome_lattice


def test_edge_list_round_trip():
    G = kagome_lattice(3, 3)
    assert parse_edge_list(format_edge_list(G)) == G
    assert parse_edge_list("# c5\n5 5\n0 1\n1 2\n2 3\n3 4\n4 0  # closing edge\n") == cycle(5)


@pytest.mark.parametrize("text", ["", "3 2\n0 1\n", "2 1\n0 0\n", "2 2\n0 1\n1 0\n", "x y\n", "3 1\n0 1 2\n"])
def test_bad_edge_lists(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_dot_output():
    dot = to_dot(cycle(3), Colouring((1, 2, 3), 3))
    assert dot.startswith("graph G {") and '0 [label="0:1"]' in dot and "0 -- 1;" in dot
    rdot = reconfig_to_dot(build_reconfig_graph(cycle(3), 3))
    # transpositions of three colours: each state has three neighbours
    assert rdot.count("--") == 9 and rdot.count("label") == 6
    with pytest.raises(ValueError):
        reconfig_to_dot(build_reconfig_graph(cycle(5), 3), max_states=10)


def test_witness_json_round_trip():
    a, b = Colouring((1, 2, 1, 2, 3), 3), Colouring((3, 1, 3, 2, 1), 3)
    ok, path = are_kempe_equivalent(cycle(5), 3, a, b)
    data = json.loads(json.dumps(witness_to_json(a, path)))
    start, replayed = witness_from_json(cycle(5), data)
    assert start == a and replayed == path and replayed[-1][1] == b


def test_corrupt_witness_rejected():
    a = Colouring((1, 2, 1, 2, 3), 3)
    bad = {"start": a.to_json(), "steps": [{"pair": [1, 2], "vertices": [0, 1]}]}
    with pytest.raises(ColouringError):
        witness_from_json(cycle(5), bad)
