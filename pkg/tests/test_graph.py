from __future__ import annotations

import pytest
from hypothesis import given

from conftest import brute_dominating, brute_mds, graphs
from equidom.generators import EXAMPLE_NAMES, weighted_example
from equidom.graph import (
    Graph,
    GraphFormatError,
    adjacency_lists,
    closed_neighborhood,
    connected_components,
    induced_subgraph,
    is_dominating,
    is_mds,
    iter_bits,
    mask,
    members,
    parse_graph,
    private_neighbors,
    serialize_graph,
)

A, B, C1, C2, D, E, S1, S2 = range(8)


def test_weighted_example_file_parses_to_the_eight_vertex_graph():
    G = weighted_example()
    text = serialize_graph(G)
    assert text.startswith("p 8 12\n")
    assert parse_graph(text) == G
    assert G.n == 8 and G.m == 12


def test_closed_neighborhood_of_d_in_weighted_example():
    G = weighted_example()
    assert members(closed_neighborhood(G, D)) == [B, D]


def test_weighted_example_dominating_examples():
    G = weighted_example()
    assert is_dominating(G, mask([A, B]))
    assert not is_dominating(G, mask([A]))
    assert is_mds(G, mask([A, B]))


@given(graphs(max_n=7))
def test_dominating_and_mds_match_definitions(G):
    for D in range(1 << G.n):
        assert is_dominating(G, D) == brute_dominating(G, D)
        assert is_mds(G, D) == brute_mds(G, D)


@given(graphs(max_n=9))
def test_round_trip(G):
    assert parse_graph(serialize_graph(G)) == G


@given(graphs(max_n=12))
def test_adjacency_lists_match_masks(G):
    assert adjacency_lists(G) == [list(iter_bits(a)) for a in G.adj]


def test_adjacency_lists_cross_word_boundaries():
    G = Graph.from_edges(200, [(0, 199), (63, 64), (64, 65), (127, 128)])
    lists = adjacency_lists(G)
    assert lists[0] == [199] and lists[64] == [63, 65] and lists[128] == [127]


@given(graphs(max_n=8))
def test_private_neighbors_witness_minimality(G):
    for D in range(1 << G.n):
        if is_dominating(G, D):
            minimal = all(private_neighbors(G, v, D) for v in iter_bits(D))
            assert minimal == is_mds(G, D)


def test_induced_subgraph_relabels_in_order():
    G = weighted_example()
    H, old_to_new = induced_subgraph(G, mask([B, D, E]))
    assert old_to_new == {B: 0, D: 1, E: 2}
    assert sorted(H.edges()) == [(0, 1), (0, 2)]


def test_components():
    G = Graph.from_edges(6, [(0, 3), (1, 4)])
    assert [members(c) for c in connected_components(G)] == [[0, 3], [1, 4], [2], [5]]


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 1 2\n", 1),
        ("p 3 1\ne 1 4\n", 2),
        ("p 3 1\ne 2 2\n", 2),
        ("p 3 1\nx 1 2\n", 2),
        ("p 3\n", 1),
        ("p 2 1\np 2 1\n", 2),
        ("p 2 1\ne 1 a\n", 2),
        ("p 0 0\n", 1),
    ],
)
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line == line


def test_missing_header():
    with pytest.raises(GraphFormatError):
        parse_graph("# only a comment\n")


def test_comments_and_duplicate_edges():
    G = parse_graph("# comment\np 3 3\ne 1 2\ne 2 1\ne 2 3\n")
    assert G.edges() == [(0, 1), (1, 2)]


def test_graph_rejects_self_loops():
    with pytest.raises(ValueError):
        Graph(2, [1, 0])


def test_example_names_line_up():
    assert EXAMPLE_NAMES[D] == "d"
