import networkx as nx
import numpy as np
import pytest
from hypothesis import given

from conftest import graph_and_perm, graphs
from oracles import graph6_encode
from symwl.generators import complete, cycle, path, star
from symwl.graph import (Graph, GraphError, disjoint_union, empty_graph, format_graph,
                         from_edge_list, is_isomorphic_small, parse_edge_list, parse_graph6,
                         read_graph, relabel, write_edge_list, write_graph6)
from symwl.powers import cartesian_product


def test_from_edge_list_examples():
    k2 = from_edge_list(2, [(0, 1)])
    assert k2.has_edge(0, 1) and k2.has_edge(1, 0)
    assert from_edge_list(3, []).num_edges == 0
    c4 = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert c4.degrees() == [2, 2, 2, 2]


@pytest.mark.parametrize("pairs", [[(0, 0)], [(0, 5)], [(-1, 0)]])
def test_from_edge_list_rejects(pairs):
    with pytest.raises(GraphError):
        from_edge_list(3, pairs)


def test_graph_validation():
    with pytest.raises(GraphError):
        Graph(np.array([[0, 1], [0, 0]], dtype=bool))
    with pytest.raises(GraphError):
        Graph(np.eye(2, dtype=bool))


def test_graph6_examples():
    assert graph6_encode(2, [(0, 1)]) == "A_"
    assert graph6_encode(3, []) == "B?"
    assert parse_graph6("A_") == complete(2)
    assert parse_graph6("B?") == empty_graph(3)
    assert write_graph6(complete(2)) == "A_"
    assert write_graph6(empty_graph(3)) == "B?"


@pytest.mark.parametrize("bad", ["", "A", "A_x", "B\x7f", "A__"])
def test_graph6_rejects(bad):
    with pytest.raises(GraphError):
        parse_graph6(bad)


@given(graphs(max_n=12))
def test_graph6_matches_oracle_and_networkx(g):
    text = write_graph6(g)
    assert text == graph6_encode(g.n, g.edges)
    ref = nx.to_graph6_bytes(nx.from_numpy_array(g.adj.astype(int)), header=False).decode().strip()
    assert text == ref
    assert parse_graph6(text) == g


@given(graphs(max_n=9))
def test_edge_list_round_trip(g):
    assert parse_edge_list(write_edge_list(g)) == g
    assert read_graph(write_edge_list(g)) == g
    assert read_graph(format_graph(g, "graph6")) == g


def test_disjoint_union_examples():
    k1 = empty_graph(1)
    assert disjoint_union(k1, k1) == empty_graph(2)
    u = disjoint_union(cycle(4), k1)
    assert (u.n, u.num_edges) == (5, 4)


def test_relabel_examples():
    c4 = cycle(4)
    assert relabel(c4, [0, 1, 2, 3]) == c4
    rot = relabel(c4, [1, 2, 3, 0])
    assert rot.num_edges == 4 and is_isomorphic_small(rot, c4)


@given(graph_and_perm(max_n=8))
def test_relabel_moves_edges(gp):
    g, perm = gp
    h = relabel(g, perm)
    assert {tuple(sorted((perm[u], perm[v]))) for u, v in g.edges} == set(h.edges)


def test_isomorphism_examples():
    c4 = cycle(4)
    assert is_isomorphic_small(c4, relabel(c4, [2, 0, 3, 1]))
    assert not is_isomorphic_small(star(3), path(4))
    assert is_isomorphic_small(cartesian_product(complete(2), complete(2)), c4)


@given(graph_and_perm(max_n=7))
def test_isomorphism_agrees_with_networkx(gp):
    g, perm = gp
    h = relabel(g, perm)
    assert is_isomorphic_small(g, h)
    other = Graph(~h.adj & ~np.eye(h.n, dtype=bool))
    ref = nx.is_isomorphic(nx.from_numpy_array(g.adj.astype(int)), nx.from_numpy_array(other.adj.astype(int)))
    assert is_isomorphic_small(g, other) == ref


def test_isomorphism_size_cap():
    with pytest.raises(GraphError):
        is_isomorphic_small(cycle(11), cycle(11))
