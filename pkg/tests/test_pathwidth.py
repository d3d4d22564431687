from __future__ import annotations

import itertools
import random

import pytest

from cfcolor.decomposition import PathDecomposition, make_nice, make_semi_nice, pathwidth_exact_small
from cfcolor.errors import PreconditionError
from cfcolor.graph import Graph, cycle_graph, path_graph, random_connected_graph
from cfcolor.pathwidth import (
    SweepState,
    assign_intro_one,
    assign_intro_special,
    color_by_exact_pathwidth,
    color_by_pathwidth,
    free_colors,
    max_expensive_subset,
    pathwidth_bound,
)
from cfcolor.verify import exact_chi_on, verify_cfon, verify_witness

from conftest import connected_atlas


def state(**pairs):
    """``state(x=(1, 2))`` puts vertex x = 0 in the bag with C=1, U=2 (names map to 0, 1, 2...)."""
    s = SweepState()
    for i, (_, (c, u)) in enumerate(sorted(pairs.items())):
        s.C[i], s.U[i] = c, u
        s.bag.add(i)
    return s


def test_free_colors_examples():
    s = state(x=(1, 2), y=(3, 2), z=(4, 5))
    assert free_colors({0, 1, 2}, s) == ({5}, {2})
    s = state(x=(1, 2), y=(2, 1))
    assert free_colors({0, 1}, s) == (set(), set())
    s = state(x=(1, 2))
    assert free_colors({0}, s) == ({2}, set())
    with pytest.raises(PreconditionError):
        free_colors({0, 7}, s)


def test_intro_one_takes_free_color():
    # bag x:(1,2), y:(3,1); the free color is 2 and v is adjacent to y only
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    s = state(x=(1, 2), y=(3, 1))
    assign_intro_one(g, 2, {0, 1}, s)
    assert (s.C[2], s.U[2]) == (2, 3)


def test_intro_one_fresh_when_free_color_blocked():
    # v next to x may not take U(x) = 2, the only free color
    g = path_graph(2)
    s = state(x=(1, 2))
    assign_intro_one(g, 1, {0}, s)
    assert (s.C[1], s.U[1]) == (3, 1)


def test_intro_one_needs_neighbor():
    with pytest.raises(PreconditionError):
        assign_intro_one(Graph.from_edges(2, []), 1, {0}, state(x=(1, 2)))


def test_intro_special_examples():
    g = path_graph(2)
    s = SweepState()
    assign_intro_special(g, 0, 1, set(), s)
    assert (s.C[0], s.C[1], s.U[0], s.U[1]) == (1, 2, 2, 1)
    g3 = Graph.from_edges(3, [(1, 2)])
    s = state(x=(1, 2))
    assign_intro_special(g3, 1, 2, {0}, s)
    assert (s.C[1], s.C[2]) == (2, 3)
    assert (s.U[1], s.U[2]) == (3, 2)
    with pytest.raises(PreconditionError):
        assign_intro_special(g, 0, 0, set(), SweepState())


def _brute_expensive(pairs):
    best = 0
    for r in range(len(pairs) + 1):
        for sub in itertools.combinations(pairs, r):
            vals = [x for p in sub for x in p]
            if len(set(vals)) == len(vals):
                best = max(best, r)
    return best


def test_max_expensive_subset():
    assert max_expensive_subset([(1, 2), (3, 4)]) == 2
    assert max_expensive_subset([(1, 2), (3, 4), (5, 2)]) == _brute_expensive([(1, 2), (3, 4), (5, 2)]) == 2
    assert max_expensive_subset([(1, 2)]) == 1
    rng = random.Random(2)
    for _ in range(100):
        pairs = [(rng.randint(1, 6), rng.randint(1, 6)) for _ in range(rng.randint(0, 7))]
        pairs = [(a, b) for a, b in pairs if a != b]
        assert max_expensive_subset(pairs) == _brute_expensive(pairs)


def test_single_edge_two_colors():
    g = path_graph(2)
    snd = make_semi_nice(g, make_nice(PathDecomposition.of([[0, 1]]), g))
    r = color_by_pathwidth(g, snd)
    assert r.colors_used == 2 and verify_cfon(g, r.coloring).valid


def test_p5_and_c5_within_bound():
    p5 = color_by_exact_pathwidth(path_graph(5))
    assert p5.parameter["width"] == 1 and p5.colors_used <= pathwidth_bound(1) == 3
    c5 = color_by_exact_pathwidth(cycle_graph(5))
    assert c5.colors_used <= pathwidth_bound(2) == 5
    assert c5.colors_used >= exact_chi_on(cycle_graph(5))[0] == 3
    for r, g in ((p5, path_graph(5)), (c5, cycle_graph(5))):
        assert verify_cfon(g, r.coloring).valid
        assert verify_witness(g, r.coloring, r.coloring.witness).valid


def test_check_mode_verifies_every_prefix():
    rng = random.Random(8)
    for _ in range(40):
        g = random_connected_graph(rng.randint(2, 9), 0.35, rng)
        r = color_by_exact_pathwidth(g, check=True)
        assert verify_cfon(g, r.coloring).valid


def test_bounds_and_expensive_subset_audit_on_small_graphs():
    for g in connected_atlas(6):
        r = color_by_exact_pathwidth(g)
        width = pathwidth_exact_small(g).width
        assert verify_cfon(g, r.coloring).valid
        assert r.colors_used <= pathwidth_bound(width)
        assert r.audit["expensive_ok"]
        assert r.audit["max_bag"] >= -(-3 * r.audit["k_star"] // 2)


def test_deterministic():
    g = random_connected_graph(9, 0.3, random.Random(4))
    assert color_by_exact_pathwidth(g).coloring == color_by_exact_pathwidth(g).coloring


def test_rejects_bad_decomposition():
    g = path_graph(3)
    snd = make_semi_nice(path_graph(2), make_nice(PathDecomposition.of([[0, 1]]), path_graph(2)))
    with pytest.raises(PreconditionError):
        color_by_pathwidth(g, snd)
