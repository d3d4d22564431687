from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from cfcolor.decomposition import compute_fvs_exact
from cfcolor.errors import PreconditionError
from cfcolor.fvs import color_by_fvs, color_fvs1, color_tree, deepest_neighbor, root_tree
from cfcolor.graph import (
    Graph,
    complete_graph,
    cycle_graph,
    generate_subdivided_clique,
    path_graph,
    random_connected_graph,
    random_tree,
    star_graph,
)
from cfcolor.verify import Coloring, exact_chi_on, verify_cfon

from conftest import connected_atlas


def test_color_tree_p4():
    g = path_graph(4)
    t = root_tree(g, range(4))
    assert (t.root, t.special) == (0, 1)
    colors, witness = color_tree(g, t, (1, 2))
    assert [colors[v] for v in range(4)] == [1, 2, 2, 1]
    assert witness == {0: 1, 1: 0, 2: 1, 3: 2}
    assert verify_cfon(g, Coloring.of([colors[v] for v in range(4)])).valid


def test_color_tree_star_and_edge():
    g = star_graph(3)
    colors, _ = color_tree(g, root_tree(g, range(4)), (1, 2))
    assert [colors[v] for v in range(4)] == [1, 2, 1, 1]
    e = path_graph(2)
    colors, _ = color_tree(e, root_tree(e, range(2)), (1, 2))
    assert [colors[0], colors[1]] == [1, 2]


def test_color_tree_rejects_singleton():
    g = Graph.from_edges(1, [])
    with pytest.raises(PreconditionError):
        color_tree(g, root_tree(g, [0]), (1, 2))


def test_deepest_neighbor_examples():
    # tree 0-1-2-3 plus outside vertex 4 joined to 0 and 3
    g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 3)])
    t = root_tree(g, range(4))
    assert deepest_neighbor(g, t, 4) == 3
    # root 0 with children 1 (special) and 2; outside 3 sees both children
    g2 = Graph.from_edges(4, [(0, 1), (0, 2), (3, 1), (3, 2)])
    t2 = root_tree(g2, range(3))
    assert t2.special == 1 and deepest_neighbor(g2, t2, 3) == 2
    g3 = Graph.from_edges(3, [(0, 1), (2, 0)])
    assert deepest_neighbor(g3, root_tree(g3, [0, 1]), 2) == 0


def test_fvs1_c5_trace():
    r = color_fvs1(cycle_graph(5), [0])
    assert r.coloring.colors == (1, 2, 3, 3, 1)
    assert r.log == ["case 2: deepest neighbor 5 recolored 1"]
    assert verify_cfon(cycle_graph(5), r.coloring).valid


def test_fvs1_star_center_and_triangle():
    star = star_graph(4)
    r = color_fvs1(star, [0])
    assert verify_cfon(star, r.coloring).valid and r.colors_used <= 3
    assert r.log == ["case 1: singleton 2 recolored 1"]
    tri = complete_graph(3)
    r = color_fvs1(tri, [0])
    assert verify_cfon(tri, r.coloring).valid and r.colors_used <= 3
    assert r.log[0].startswith("case 3")


def test_color_by_fvs_kstar4_meets_bound():
    g = generate_subdivided_clique(4)
    f = compute_fvs_exact(g)
    r = color_by_fvs(g, f)
    assert len(f) == 2 and r.bound == 4
    assert verify_cfon(g, r.coloring).valid
    assert r.colors_used == 4 == exact_chi_on(g)[0]


def test_color_by_fvs_tree_and_c5():
    t = random_tree(15, random.Random(2))
    r = color_by_fvs(t, [])
    assert r.colors_used == 2 and verify_cfon(t, r.coloring).valid
    c5 = color_by_fvs(cycle_graph(5), [0])
    assert c5.colors_used == 3


def test_rejects_non_fvs_and_disconnected():
    with pytest.raises(PreconditionError):
        color_by_fvs(cycle_graph(5), [])
    with pytest.raises(PreconditionError):
        color_by_fvs(Graph.from_edges(4, [(0, 1), (2, 3)]), [])


def test_every_fvs_of_small_graphs():
    # every feedback vertex set, minimal or padded by up to two vertices
    for g in connected_atlas(6)[::2]:
        h = g.to_networkx()
        k = len(compute_fvs_exact(g))
        opt = exact_chi_on(g)[0]
        for size in range(k, min(k + 2, g.n) + 1):
            for f in itertools.combinations(range(g.n), size):
                rest = h.copy()
                rest.remove_nodes_from(f)
                if rest.number_of_nodes() and not nx.is_forest(rest):
                    continue
                r = color_by_fvs(g, f)
                assert verify_cfon(g, r.coloring).valid
                assert opt <= r.colors_used <= len(f) + 2


def test_random_graphs_respect_bound():
    rng = random.Random(13)
    for _ in range(60):
        g = random_connected_graph(rng.randint(3, 14), 0.2, rng)
        f = compute_fvs_exact(g)
        r = color_by_fvs(g, f)
        assert verify_cfon(g, r.coloring).valid and r.colors_used <= len(f) + 2
