"""Partial conflict-free coloring of planar and outerplanar graphs.

A maximal distance-3 set ``V0`` splits the graph into ``V0``, its
neighborhood ``V1`` and the rest ``V2``. Contracting every vertex of
``A = V0 + V2`` into a chosen ``V1`` neighbor gives a minor ``G'`` on ``V1``.
A proper coloring of ``G'`` (shifted to start at 2) together with color 1 on
``V0`` and nothing on ``V2`` is a partial conflict-free coloring of the input.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations

from .errors import InvariantViolation, PreconditionError
from .graph import Graph, bfs_distances, require_colorable
from .result import ColoringResult
from .verify import Coloring, verify_partial_cfon

DEFAULT_BUDGET = 10**7


def maximal_distance3_set(g: Graph, start: int = 0) -> list[int]:
    """Greedy maximal distance-3 set grown from ``start`` by ascending-id rescans."""
    if not 0 <= start < g.n:
        raise PreconditionError(f"start vertex {start + 1} out of range")
    # nearest[x] = distance from x to the closest member so far
    nearest = [d if d is not None else g.n + 1 for d in bfs_distances(g, start)]
    members = [start]
    changed = True
    while changed:
        changed = False
        for w in range(g.n):
            if nearest[w] == 3:
                members.append(w)
                dist = bfs_distances(g, w)
                nearest = [min(a, b) if b is not None else a for a, b in zip(nearest, dist)]
                changed = True
    return sorted(members)


@dataclass(frozen=True)
class Distance3Partition:
    V0: frozenset[int]
    V1: frozenset[int]
    V2: frozenset[int]
    f: dict[int, int]


def build_partition(g: Graph, start: int = 0) -> Distance3Partition:
    v0 = frozenset(maximal_distance3_set(g, start))
    v1 = frozenset(w for v in v0 for w in g.adj[v])
    v2 = frozenset(range(g.n)) - v0 - v1
    f = {}
    for v in sorted(v0 | v2):
        hood = [w for w in g.adj[v] if w in v1]
        if not hood:
            raise PreconditionError(f"vertex {v + 1} has no neighbor next to the distance-3 set")
        f[v] = min(hood)
    return Distance3Partition(v0, v1, v2, f)


def check_partition(g: Graph, p: Distance3Partition) -> list[str]:
    problems = []
    if p.V0 | p.V1 | p.V2 != frozenset(range(g.n)) or len(p.V0) + len(p.V1) + len(p.V2) != g.n:
        problems.append("V0, V1, V2 do not partition the vertices")
    for u, v in g.edges():
        if u in p.V0 and v in p.V0:
            problems.append(f"V0 not independent: {u + 1}-{v + 1}")
        if (u in p.V0 and v in p.V2) or (u in p.V2 and v in p.V0):
            problems.append(f"edge between V0 and V2: {u + 1}-{v + 1}")
    for w in sorted(p.V1):
        k = sum(1 for x in g.adj[w] if x in p.V0)
        if k != 1:
            problems.append(f"vertex {w + 1} of V1 has {k} neighbors in V0")
    for v in sorted(p.V2):
        if not any(x in p.V1 for x in g.adj[v]):
            problems.append(f"vertex {v + 1} of V2 has no neighbor in V1")
    for v in sorted(p.V0 | p.V2):
        t = p.f.get(v)
        if t is None or t not in p.V1 or not g.has_edge(v, t):
            problems.append(f"contraction target of vertex {v + 1} is not a V1 neighbor")
    return problems


def build_contracted_graph(g: Graph, p: Distance3Partition) -> tuple[Graph, list[int]]:
    """Return ``G'`` relabeled to ``0..|V1|-1`` and the original id of each of its vertices."""
    problems = check_partition(g, p)
    if problems:
        raise PreconditionError("invalid partition: " + "; ".join(problems))
    old = sorted(p.V1)
    new = {v: i for i, v in enumerate(old)}
    edges = set()
    for u, v in g.edges():
        if u in p.V1 and v in p.V1:
            edges.add((min(new[u], new[v]), max(new[u], new[v])))
    for v, t in p.f.items():
        for x in g.adj[v]:
            # V2-V2 edges were deleted before contracting; everything else lands in V1
            if x in p.V1 and x != t:
                a, b = new[t], new[x]
                edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(len(old), sorted(edges)), old


def _first_use_order(colors: list[int]) -> tuple[int, ...]:
    remap: dict[int, int] = {}
    for c in colors:
        if c not in remap:
            remap[c] = len(remap) + 1
    return tuple(remap[c] for c in colors)


def proper_coloring(g: Graph, k: int, budget: int = DEFAULT_BUDGET) -> tuple[tuple[int, ...] | None, bool]:
    """Exact DSATUR backtracking for a proper ``k``-coloring.

    Returns ``(colors, exhausted)``. ``colors`` is ``None`` on failure and
    ``exhausted`` tells a budget stop apart from a proof of infeasibility.
    Colors are renumbered ``1..`` in order of first use by vertex id.
    """
    n = g.n
    if n == 0:
        return (), False
    color = [0] * n
    # seen[v][c] = number of colored neighbors of v holding c
    seen = [[0] * (k + 1) for _ in range(n)]
    sat = [0] * n
    nodes = 0

    def pick():
        best, key = -1, None
        for v in range(n):
            if color[v] == 0:
                kv = (sat[v], g.degree(v), -v)
                if key is None or kv > key:
                    best, key = v, kv
        return best

    def place(v, c, sign):
        for w in g.adj[v]:
            row = seen[w]
            if sign > 0:
                if row[c] == 0:
                    sat[w] += 1
                row[c] += 1
            else:
                row[c] -= 1
                if row[c] == 0:
                    sat[w] -= 1

    def grow(done, top):
        nonlocal nodes
        if done == n:
            return True
        v = pick()
        for c in range(1, min(top + 1, k) + 1):
            if seen[v][c]:
                continue
            nodes += 1
            if nodes > budget:
                raise _BudgetOut
            color[v] = c
            place(v, c, 1)
            if grow(done + 1, max(top, c)):
                return True
            place(v, c, -1)
            color[v] = 0
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * n + 100))
    try:
        ok = grow(0, 0)
    except _BudgetOut:
        return None, True
    finally:
        sys.setrecursionlimit(limit)
    if not ok:
        return None, False
    return _first_use_order(color), False


class _BudgetOut(Exception):
    pass


def _kempe_component(adj, color, start, a, b):
    comp = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in comp and color.get(y) in (a, b):
                comp.add(y)
                stack.append(y)
    return comp


def proper_color_planar5(g: Graph) -> tuple[int, ...]:
    """Classical 5-coloring by low-degree removal with Kempe-chain recoloring.

    Without an embedding the two neighbors to swap are found by trying every
    pair of neighbor colors; on a planar graph some pair always works.
    """
    adj = [set(g.adj[v]) for v in range(g.n)]
    alive = set(range(g.n))
    stack = []
    while alive:
        v = min(alive, key=lambda x: (len(adj[x] & alive), x))
        if len(adj[v] & alive) > 5:
            raise PreconditionError("no vertex of degree at most 5 left; graph is not planar")
        stack.append(v)
        alive.remove(v)
    color: dict[int, int] = {}
    while stack:
        v = stack.pop()
        hood = sorted(w for w in adj[v] if w in color)
        used = {color[w] for w in hood}
        free = [c for c in range(1, 6) if c not in used]
        if not free:
            free = _kempe_free(adj, color, hood)
            if not free:
                raise PreconditionError(f"Kempe recoloring failed at vertex {v + 1}; graph is not planar")
        color[v] = free[0]
    return _first_use_order([color[v] for v in range(g.n)])


def _kempe_free(adj, color, hood):
    for x, y in combinations(hood, 2):
        a, b = color[x], color[y]
        comp = _kempe_component(adj, color, x, a, b)
        if y in comp:
            continue
        for z in comp:
            color[z] = b if color[z] == a else a
        return [a]
    return []


def _lift(g: Graph, p: Distance3Partition, old: list[int], proper: tuple[int, ...]) -> Coloring:
    colors: list[int | None] = [None] * g.n
    for v in p.V0:
        colors[v] = 1
    for i, v in enumerate(old):
        colors[v] = proper[i] + 1
    witness: list[int | None] = [None] * g.n
    for v in range(g.n):
        witness[v] = 1 if v in p.V1 else colors[p.f[v]]
    return Coloring.of(colors, witness)


def _partial_pipeline(g: Graph, k: int, budget: int, method: str, allow_fallback: bool) -> ColoringResult:
    require_colorable(g)
    p = build_partition(g)
    problems = check_partition(g, p)
    if problems:
        raise InvariantViolation("distance-3 partition broken: " + "; ".join(problems))
    gp, old = build_contracted_graph(g, p)
    log = []
    if len(p.V0) == 1:
        log.append("distance-3 set is a single vertex (no vertex at distance 3)")
    proper, exhausted = proper_coloring(gp, k, budget)
    fallback = False
    if proper is None:
        if not allow_fallback:
            why = "search budget exhausted" if exhausted else "none exists; input is not outerplanar"
            raise PreconditionError(f"proper {k}-coloring of the contracted graph failed: {why}")
        why = "budget exhausted" if exhausted else "no 4-coloring exists"
        log.append(f"exact 4-coloring failed ({why}); using the 5-coloring fallback")
        proper = proper_color_planar5(gp)
        fallback = True
    coloring = _lift(g, p, old, proper)
    verdict = verify_partial_cfon(g, coloring)
    if not verdict.valid:
        v, why = verdict.violations[0]
        raise InvariantViolation(f"lifted coloring invalid at vertex {v + 1}: {why}")
    bound = k + 1 if not fallback else 6
    return ColoringResult(
        method=method,
        coloring=coloring,
        bound=bound,
        parameter={"V0": len(p.V0), "V1": len(p.V1), "V2": len(p.V2), "contracted_m": gp.m},
        log=log,
        audit={"contracted_n": gp.n, "contracted_m": gp.m, "m": g.m, "minor_edges_ok": gp.m <= g.m},
        fallback_used=fallback,
    )


def partial_cfon_planar(g: Graph, budget: int = DEFAULT_BUDGET) -> ColoringResult:
    """Partial coloring with at most 5 colors, or 6 if the 4-coloring search gives up."""
    return _partial_pipeline(g, 4, budget, "planar-partial", allow_fallback=True)


def partial_cfon_outerplanar(g: Graph, budget: int = DEFAULT_BUDGET) -> ColoringResult:
    """Partial coloring with at most 4 colors via a proper 3-coloring of the contracted graph."""
    if g.n >= 2 and g.m > 2 * g.n - 3:
        raise PreconditionError(f"{g.m} edges exceed 2n-3 = {2 * g.n - 3}; input is not outerplanar")
    return _partial_pipeline(g, 3, budget, "outerplanar-partial", allow_fallback=False)
