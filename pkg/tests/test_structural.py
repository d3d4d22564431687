from __future__ import annotations

import itertools
import math
import random

import pytest

from cfcolor.decomposition import (
    clique_independent_counts,
    compute_cluster_modulator_exact,
    compute_type_partition,
    type_graph,
)
from cfcolor.errors import PreconditionError
from cfcolor.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    generate_subdivided_clique,
    path_graph,
    random_bounded_nd,
    random_cluster_plus_modulator,
)
from cfcolor.structural import cfcn_by_dc, cfcn_by_nd, cfon_by_dc, cfon_by_nd, clique_coloring
from cfcolor.verify import exact_chi_cn, exact_chi_on, verify_cfcn, verify_cfon

from conftest import brute_chi, connected_atlas


def _joined_cliques():
    # three K2 classes joined along a path: every class is a clique
    classes = [(0, 1), (2, 3), (4, 5)]
    edges = list(classes)
    for a, b in ((0, 1), (1, 2)):
        edges += [(x, y) for x in classes[a] for y in classes[b]]
    return Graph.from_edges(6, edges)


def test_nd_k23():
    g = complete_bipartite(2, 3)
    r = cfon_by_nd(g)
    assert exact_chi_on(type_graph(compute_type_partition(g)))[0] == 1
    assert r.bound == 1 + 0 + 2
    assert r.colors_used == 2 and verify_cfon(g, r.coloring).valid


def test_nd_single_clique_class():
    r = cfon_by_nd(complete_graph(4))
    assert r.coloring.colors == (1, 2, 3, 3)
    assert r.bound == 3
    # the clique rule is not optimal on even cliques: (1,1,2,2) works on K4
    assert exact_chi_on(complete_graph(4))[0] == brute_chi(complete_graph(4)) == 2


def test_nd_singleton_classes_use_type_palette():
    g = cycle_graph(5)
    r = cfon_by_nd(g)
    assert verify_cfon(g, r.coloring).valid
    assert r.colors_used == exact_chi_on(g)[0] == 3


def test_cfcn_nd_examples():
    k23 = complete_bipartite(2, 3)
    r = cfcn_by_nd(k23)
    assert verify_cfcn(k23, r.coloring).valid and r.colors_used <= r.bound
    k5 = complete_graph(5)
    r = cfcn_by_nd(k5)
    chi_h = exact_chi_cn(type_graph(compute_type_partition(k5)))[0]
    assert verify_cfcn(k5, r.coloring).valid and r.colors_used <= chi_h + 3
    g = _joined_cliques()
    r = cfcn_by_nd(g)
    chi_h = exact_chi_cn(type_graph(compute_type_partition(g)))[0]
    assert r.audit["bad_initial"] == [] and r.colors_used == chi_h + 1


def test_clique_coloring():
    assert clique_coloring(2) == [1, 2]
    assert clique_coloring(5) == [1, 2, 3, 3, 3]


def test_dc_examples():
    k4 = complete_graph(4)
    r = cfon_by_dc(k4, [])
    assert r.coloring.colors == (1, 2, 3, 3)
    ks = generate_subdivided_clique(4)
    r = cfon_by_dc(ks, [0, 1, 2, 3])
    assert verify_cfon(ks, r.coloring).valid and exact_chi_on(ks)[0] <= r.colors_used <= 7
    p3 = path_graph(3)
    r = cfon_by_dc(p3, [1])
    assert verify_cfon(p3, r.coloring).valid and exact_chi_on(p3)[0] <= r.colors_used <= 4


def test_dc_closed_examples():
    r = cfcn_by_dc(complete_graph(4), [])
    assert verify_cfcn(complete_graph(4), r.coloring).valid and r.colors_used <= 3
    r = cfcn_by_dc(path_graph(3), [1])
    assert verify_cfcn(path_graph(3), r.coloring).valid and r.colors_used <= 3
    # two adjacent modulator vertices each with its own clique
    g = Graph.from_edges(8, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (6, 7), (6, 0), (7, 3)])
    r = cfcn_by_dc(g, [6, 7])
    assert verify_cfcn(g, r.coloring).valid and r.colors_used <= max(3, 2 + 1)


def test_dc_rejects_bad_modulator():
    with pytest.raises(PreconditionError):
        cfon_by_dc(path_graph(4), [])


def test_nd_bounds_on_all_small_graphs():
    for g in connected_atlas(6):
        cert = compute_type_partition(g)
        cl, ind = clique_independent_counts(cert)
        h = type_graph(cert)
        r = cfon_by_nd(g, cert)
        assert verify_cfon(g, r.coloring).valid
        if h.n > 1:
            assert r.colors_used <= exact_chi_on(h)[0] + math.ceil(cl / 2) + 2
        rc = cfcn_by_nd(g, cert)
        assert verify_cfcn(g, rc.coloring).valid
        assert rc.colors_used <= exact_chi_cn(h)[0] + math.ceil(ind / 3) + 3


def test_dc_every_modulator_small_graphs():
    for g in connected_atlas(6)[::2]:
        d = len(compute_cluster_modulator_exact(g))
        opt_on, opt_cn = exact_chi_on(g)[0], exact_chi_cn(g)[0]
        for size in (d, d + 1):
            for x in itertools.combinations(range(g.n), size):
                try:
                    r = cfon_by_dc(g, x)
                except PreconditionError:
                    continue
                assert verify_cfon(g, r.coloring).valid and opt_on <= r.colors_used <= size + 3
                assert r.audit["reserved_single_use"]
                rc = cfcn_by_dc(g, x)
                assert verify_cfcn(g, rc.coloring).valid and opt_cn <= rc.colors_used <= max(3, size + 1)


def test_generated_families():
    rng = random.Random(21)
    for _ in range(30):
        g, cert = random_bounded_nd(rng.randint(2, 7), rng)
        r = cfon_by_nd(g, cert)
        assert verify_cfon(g, r.coloring).valid and r.colors_used <= r.bound
        assert sorted(r.audit["bad_sets"]) == sorted(r.audit["bad_initial"])
        g, cert = random_cluster_plus_modulator([rng.randint(1, 4) for _ in range(rng.randint(1, 4))], rng.randint(1, 4), rng)
        r = cfon_by_dc(g, cert.vertices)
        assert verify_cfon(g, r.coloring).valid and r.colors_used <= r.bound


def test_lone_bad_set_is_logged_once():
    r = cfon_by_nd(_joined_cliques())
    assert r.audit["bad_initial"] == [1] and list(r.audit["bad_sets"]) == [1]
