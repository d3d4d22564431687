from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from cfcolor import _accel
from cfcolor.decomposition import (
    compute_fvs_exact,
    compute_type_partition,
    parse_certificate,
    parse_decomposition,
    pathwidth_exact_small,
    serialize_certificate,
    serialize_decomposition,
    validate_path_decomposition,
)
from cfcolor.fvs import color_by_fvs
from cfcolor.graph import Graph, parse_edge_list, random_connected_graph, random_outerplanar, serialize_edge_list
from cfcolor.outerplanar import color_outerplanar
from cfcolor.pathwidth import color_by_exact_pathwidth
from cfcolor.verify import (
    Coloring,
    _search_tables,
    exact_chi_cn,
    exact_chi_on,
    exact_chi_on_partial,
    parse_coloring,
    serialize_coloring,
    verify_cfon,
    verify_partial_cfon,
)

from conftest import brute_valid


@st.composite
def connected_graphs(draw, nmin=2, nmax=9):
    n = draw(st.integers(nmin, nmax))
    p = draw(st.floats(0.0, 0.7))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_connected_graph(n, p, random.Random(seed))


@given(connected_graphs())
@settings(max_examples=150, deadline=None)
def test_edge_list_roundtrip(g):
    h = parse_edge_list(serialize_edge_list(g))
    assert h.n == g.n and h.edges() == g.edges()


@given(connected_graphs(), st.data())
@settings(max_examples=150, deadline=None)
def test_verifier_agrees_with_definition(g, data):
    colors = data.draw(st.lists(st.one_of(st.none(), st.integers(1, 3)), min_size=g.n, max_size=g.n))
    adj = [sorted(g.adj[v]) for v in range(g.n)]
    assert verify_partial_cfon(g, Coloring.of(colors)).valid == brute_valid(adj, colors)
    if None not in colors:
        assert verify_cfon(g, Coloring.of(colors)).valid == brute_valid(adj, colors)
    back = parse_coloring(serialize_coloring(Coloring.of(colors)), g.n)
    assert back.colors == tuple(colors)


@given(connected_graphs())
@settings(max_examples=100, deadline=None)
def test_oracle_ordering(g):
    on, c = exact_chi_on(g)
    part, cp = exact_chi_on_partial(g)
    cn = exact_chi_cn(g)[0]
    assert verify_cfon(g, c).valid and verify_partial_cfon(g, cp).valid
    assert part <= on <= part + 1 and part <= cn
    # one fewer color is impossible, on either backend
    if on > 1:
        assert _accel.python_search(g.n, *_search_tables(g, False), on - 1, False, False)[0] is None


@given(connected_graphs(nmax=10))
@settings(max_examples=100, deadline=None)
def test_methods_sandwiched(g):
    opt = exact_chi_on(g)[0]
    r = color_by_exact_pathwidth(g, check=True)
    assert verify_cfon(g, r.coloring).valid and opt <= r.colors_used <= r.bound
    f = compute_fvs_exact(g)
    r = color_by_fvs(g, f)
    assert verify_cfon(g, r.coloring).valid and opt <= r.colors_used <= len(f) + 2


@given(connected_graphs(nmax=10))
@settings(max_examples=80, deadline=None)
def test_decomposition_and_certificate_roundtrip(g):
    pd = pathwidth_exact_small(g)
    back = parse_decomposition(serialize_decomposition(pd, g.n))
    assert validate_path_decomposition(g, back).valid
    assert [sorted(b) for b in back.bags] == [sorted(b) for b in pd.bags]
    cert = compute_type_partition(g)
    again, n = parse_certificate(serialize_certificate(cert, g.n))
    assert n == g.n and sorted(map(sorted, again.classes)) == sorted(map(sorted, cert.classes))


@given(st.integers(3, 40), st.floats(0.0, 1.0), st.integers(0, 2**32 - 1))
@settings(max_examples=150, deadline=None)
def test_outerplanar_four_colors(n, keep, seed):
    g = random_outerplanar(n, random.Random(seed), keep=keep)
    r = color_outerplanar(g)
    assert verify_cfon(g, r.coloring).valid and r.colors_used <= 4


@given(connected_graphs(nmax=8))
@settings(max_examples=60, deadline=None)
def test_relabeling_does_not_change_optimum(g):
    perm = list(range(g.n))
    random.Random(g.m).shuffle(perm)
    h = Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])
    assert exact_chi_on(g)[0] == exact_chi_on(h)[0]
    assert exact_chi_on_partial(g)[0] == exact_chi_on_partial(h)[0]
