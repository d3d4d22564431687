from __future__ import annotations

import itertools

import networkx as nx
import pytest
from networkx.generators.atlas import graph_atlas_g

from cfcolor.graph import Graph

ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES.append(f"criterion {criterion:>2}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)


def as_graph(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph.from_edges(h.number_of_nodes(), h.edges())


def brute_valid(adj, colors, closed=False) -> bool:
    """Every vertex sees some assigned color exactly once in its neighborhood."""
    for v, hood in enumerate(adj):
        seen: dict[int, int] = {}
        for w in list(hood) + ([v] if closed else []):
            c = colors[w]
            if c is not None:
                seen[c] = seen.get(c, 0) + 1
        if 1 not in seen.values():
            return False
    return True


def brute_chi(g: Graph, closed: bool = False, partial: bool = False) -> int:
    """Smallest k by trying every assignment; only for very small graphs."""
    assert g.n <= 8
    adj = [list(g.adj[v]) for v in range(g.n)]
    for k in range(1, g.n + 1):
        choices = list(range(1, k + 1)) + ([None] if partial else [])
        for colors in itertools.product(choices, repeat=g.n):
            if brute_valid(adj, colors, closed):
                return k
    raise AssertionError("no coloring found")


def connected_atlas(nmax: int, nmin: int = 2) -> list[Graph]:
    """All connected graphs on nmin..nmax vertices (nmax <= 7), one per isomorphism class."""
    return [
        as_graph(h)
        for h in graph_atlas_g()[1:]
        if nmin <= h.number_of_nodes() <= nmax and nx.is_connected(h)
    ]


def outerplanar_graphs(nmax: int = 8) -> list[Graph]:
    """Connected outerplanar graphs up to isomorphism on 2..nmax vertices (nmax <= 8).

    Eight-vertex graphs come from seven-vertex ones plus a vertex joined to a
    neighbor subset; every connected graph has a non-cut vertex, so this
    reaches all of them.
    """
    from cfcolor.outerplanar import is_outerplanar

    out, base7 = [], []
    for h in graph_atlas_g()[1:]:
        if h.number_of_nodes() < 2 or not nx.is_connected(h):
            continue
        g = as_graph(h)
        if is_outerplanar(g):
            out.append(g)
            if g.n == 7:
                base7.append(h)
    if nmax < 8:
        return [g for g in out if g.n <= nmax]
    seen: dict[str, list[nx.Graph]] = {}
    for h in base7:
        for r in range(1, 8):
            for hood in itertools.combinations(range(7), r):
                edges = list(h.edges()) + [(7, s) for s in hood]
                g = Graph.from_edges(8, edges)
                if not is_outerplanar(g):
                    continue
                hh = nx.Graph(edges)
                bucket = seen.setdefault(nx.weisfeiler_lehman_graph_hash(hh), [])
                if any(nx.is_isomorphic(hh, o) for o in bucket):
                    continue
                bucket.append(hh)
                out.append(g)
    return out


@pytest.fixture(scope="session")
def small_graphs() -> list[Graph]:
    return connected_atlas(6)
