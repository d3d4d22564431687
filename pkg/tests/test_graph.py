from __future__ import annotations

import random

import networkx as nx
import pytest

from cfcolor.errors import GraphValidationError, ParseError, PreconditionError
from cfcolor.graph import (
    Graph,
    bfs_distance,
    connected_components,
    cycle_graph,
    generate_family,
    generate_subdivided_clique,
    is_connected,
    is_forest,
    parse_edge_list,
    path_graph,
    pentagon_chain,
    planar_lower_bound_graph,
    random_maximal_outerplanar,
    random_outerplanar,
    random_planar,
    random_tree,
    require_colorable,
    serialize_edge_list,
)


def test_parse_plain_edges():
    g = parse_edge_list("1 2\n2 3")
    assert g.n == 3 and g.edges() == [(0, 1), (1, 2)]


def test_parse_dimacs_matches_plain():
    assert parse_edge_list("p edge 3 2\ne 1 2\ne 2 3") == parse_edge_list("1 2\n2 3")


def test_self_loop_rejected():
    with pytest.raises(GraphValidationError):
        parse_edge_list("1 1")


def test_malformed_line_reports_line_number():
    with pytest.raises(ParseError, match="line 2"):
        parse_edge_list("1 2\n2 x")


def test_comments_duplicates_and_header_n():
    g = parse_edge_list("c hi\np edge 5 2\n1 2\n2 1\ne 2 3\n")
    assert g.n == 5 and g.m == 2
    assert g.isolated_vertices() == [3, 4]


def test_serialize_roundtrip():
    g = random_maximal_outerplanar(12, random.Random(3))
    text = serialize_edge_list(g)
    assert parse_edge_list(text) == g
    lines = [tuple(map(int, ln.split())) for ln in text.splitlines() if ln and ln[0].isdigit()]
    assert lines == sorted(lines)


def test_adjacency_sorted_and_symmetric():
    g = Graph.from_edges(4, [(3, 0), (2, 0), (1, 0), (3, 2)])
    assert g.adj[0] == (1, 2, 3)
    for u, v in g.edges():
        assert u in g.adj[v] and v in g.adj[u]


def test_components():
    assert connected_components(path_graph(3)) == [[0, 1, 2]]
    assert connected_components(Graph.from_edges(4, [(0, 1), (2, 3)])) == [[0, 1], [2, 3]]
    assert connected_components(Graph.from_edges(0, [])) == []


def test_bfs_distance():
    p7 = path_graph(7)
    assert bfs_distance(p7, 0, 3) == 3
    assert bfs_distance(p7, 4, 4) == 0
    assert bfs_distance(Graph.from_edges(4, [(0, 1), (2, 3)]), 0, 2) is None


def test_bfs_distance_matches_networkx_and_triangle_inequality():
    rng = random.Random(11)
    g = random_planar(25, rng)
    ref = dict(nx.all_pairs_shortest_path_length(g.to_networkx()))
    for _ in range(200):
        a, b, c = (rng.randrange(g.n) for _ in range(3))
        assert bfs_distance(g, a, b) == ref[a][b] == bfs_distance(g, b, a)
        assert bfs_distance(g, a, c) <= bfs_distance(g, a, b) + bfs_distance(g, b, c)


def test_subdivided_clique_sizes():
    k4 = generate_subdivided_clique(4)
    assert (k4.n, k4.m) == (10, 12)
    k3 = generate_subdivided_clique(3)
    assert nx.is_isomorphic(k3.to_networkx(), nx.cycle_graph(6))
    with pytest.raises(PreconditionError):
        generate_subdivided_clique(2)


def test_family_cycle():
    g, cert = generate_family("cycle", {"n": 5})
    assert g == cycle_graph(5) and cert is None
    with pytest.raises(PreconditionError):
        generate_family("cycle", {"n": 2})


def test_family_maximal_outerplanar_edge_count():
    g, _ = generate_family("random_maximal_outerplanar", {"n": 8}, seed=1)
    assert g.n == 8 and g.m == 13
    for seed in range(30):
        g = random_maximal_outerplanar(3 + seed, random.Random(seed))
        assert g.m == 2 * g.n - 3 and is_connected(g)


def test_family_cluster_modulator_planted():
    g, cert = generate_family("random_cluster_plus_modulator", {"cliques": [3, 3], "d": 2}, seed=1)
    assert cert.kind == "cluster_modulator" and len(cert.vertices) == 2
    rest, _ = g.without(cert.vertices)
    comps = list(nx.connected_components(rest.to_networkx()))
    assert sorted(len(c) for c in comps) == [3, 3]
    h = rest.to_networkx()
    assert all(h.subgraph(c).number_of_edges() == 3 for c in comps)
    assert is_connected(g)


def test_family_bounded_nd_expands_type_graph():
    g, cert = generate_family("random_bounded_nd", {"types": 5}, seed=4)
    assert sorted(v for c in cert.classes for v in c) == list(range(g.n))
    assert is_connected(g) or g.n == 1


def test_random_generators_connected():
    rng = random.Random(0)
    for n in range(3, 40, 3):
        assert is_forest(random_tree(n, rng)) and is_connected(random_tree(n, rng))
        assert is_connected(random_planar(n, rng))
        assert is_connected(random_outerplanar(n, rng))
        assert nx.check_planarity(random_planar(n, rng).to_networkx())[0]


def test_pentagon_chain_faces():
    g = pentagon_chain(4)
    assert g.n == 5 + 3 * 3 and g.m == 5 + 4 * 3
    assert nx.check_planarity(g.to_networkx())[0]


def test_planar_lower_bound_graph_shape():
    g = planar_lower_bound_graph()
    assert g.n == 14 and nx.check_planarity(g.to_networkx())[0]
    assert sum(1 for v in range(g.n) if g.degree(v) == 1) == 4


def test_isolated_vertex_rejected_at_entry():
    with pytest.raises(PreconditionError):
        require_colorable(Graph.from_edges(3, [(0, 1)]))
