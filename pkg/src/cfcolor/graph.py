"""Simple undirected graphs, edge-list I/O, traversal helpers and instance generators.

Vertices are ``0..n-1`` internally and ``1..n`` in every text format.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import GraphValidationError, ParseError, PreconditionError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph with sorted adjacency lists."""

    n: int
    adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphValidationError(f"adjacency has {len(self.adj)} rows, expected {self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise GraphValidationError(f"self-loop at vertex {u + 1}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphValidationError(f"edge ({u + 1}, {v + 1}) out of range for n={n}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    @property
    def _adjsets(self) -> tuple[frozenset[int], ...]:
        cached = self.__dict__.get("_adjsets_cache")
        if cached is None:
            cached = tuple(frozenset(a) for a in self.adj)
            object.__setattr__(self, "_adjsets_cache", cached)
        return cached

    def nbr_set(self, v: int) -> frozenset[int]:
        return self._adjsets[v]

    def isolated_vertices(self) -> list[int]:
        return [v for v in range(self.n) if not self.adj[v]]

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``vertices``; returns it with the new-to-old id map."""
        order = sorted(vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u in order for v in self.adj[u] if v in index and u < v]
        return Graph.from_edges(len(order), edges), order

    def without(self, removed: Iterable[int]) -> tuple["Graph", list[int]]:
        gone = set(removed)
        return self.induced([v for v in range(self.n) if v not in gone])

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g


@dataclass(frozen=True)
class StructuralCertificate:
    """A witness for a structural parameter.

    ``kind`` is ``"fvs"``, ``"cluster_modulator"`` or ``"type_partition"``.
    For the first two ``vertices`` holds the set; for a type partition
    ``classes`` holds the classes, ``clique_flags`` whether each class is a
    clique, and ``type_edges`` the edges of the type graph.
    """

    kind: str
    vertices: tuple[int, ...] = ()
    classes: tuple[tuple[int, ...], ...] = ()
    clique_flags: tuple[bool, ...] = ()
    type_edges: tuple[tuple[int, int], ...] = field(default=())


# ---------------------------------------------------------------- parsing


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v`` lines (1-indexed), ``c`` comments, and DIMACS ``p edge`` / ``e u v``."""
    declared_n = None
    edges: list[tuple[int, int]] = []
    max_label = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"bad header {line!r}", lineno)
            try:
                declared_n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            if declared_n < 0:
                raise ParseError("negative vertex count", lineno)
            continue
        if parts[0] == "e":
            parts = parts[1:]
        if len(parts) != 2:
            raise ParseError(f"expected two vertex labels, got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer label in {line!r}", lineno) from None
        if u < 1 or v < 1:
            raise ParseError(f"labels must be positive, got {line!r}", lineno)
        if u == v:
            raise GraphValidationError(f"self-loop at vertex {u}", lineno)
        edges.append((u - 1, v - 1))
        max_label = max(max_label, u, v)
    n = max_label if declared_n is None else declared_n
    if max_label > n:
        raise ParseError(f"label {max_label} exceeds declared vertex count {n}")
    return Graph.from_edges(n, edges)


def serialize_edge_list(g: Graph) -> str:
    return "".join(f"{u + 1} {v + 1}\n" for u, v in sorted(g.edges()))


# ---------------------------------------------------------------- traversal


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] is None:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def bfs_distance(g: Graph, u: int, v: int) -> int | None:
    """Shortest edge-count distance; ``None`` when ``v`` is unreachable from ``u``."""
    for x in (u, v):
        if not 0 <= x < g.n:
            raise PreconditionError(f"vertex id {x} out of range")
    return bfs_distances(g, u)[v]


def is_forest(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def require_colorable(g: Graph) -> None:
    """Entry check for every coloring algorithm: connected, no isolated vertices."""
    if g.n == 0:
        raise PreconditionError("empty graph")
    iso = g.isolated_vertices()
    if iso:
        raise PreconditionError(f"isolated vertex {iso[0] + 1} cannot be CFON colored")
    if not is_connected(g):
        raise PreconditionError("graph is not connected")


# ---------------------------------------------------------------- generators


def path_graph(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    if leaves < 1:
        raise PreconditionError("star needs at least one leaf")
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def generate_subdivided_clique(n: int) -> Graph:
    """K*_n: the n-clique with every edge subdivided once. Originals are ``0..n-1``."""
    if n < 3:
        raise PreconditionError("subdivided clique needs n >= 3")
    edges = []
    nxt = n
    for a, b in combinations(range(n), 2):
        edges += [(a, nxt), (nxt, b)]
        nxt += 1
    return Graph.from_edges(nxt, edges)


def planar_lower_bound_graph() -> Graph:
    """K4 with each edge subdivided and a pendant on every original vertex (14 vertices)."""
    sub = generate_subdivided_clique(4)
    edges = sub.edges() + [(i, sub.n + i) for i in range(4)]
    return Graph.from_edges(sub.n + 4, edges)


def random_tree(n: int, rng: random.Random) -> Graph:
    if n < 1:
        raise PreconditionError("tree needs n >= 1")
    return Graph.from_edges(n, [(rng.randrange(i), i) for i in range(1, n)])


def _relabel(n: int, edges: list[tuple[int, int]], rng: random.Random) -> Graph:
    perm = list(range(n))
    rng.shuffle(perm)
    return Graph.from_edges(n, [(perm[u], perm[v]) for u, v in edges])


def random_maximal_outerplanar(n: int, rng: random.Random, shuffle: bool = True) -> Graph:
    """Random triangulation of a convex n-gon (m = 2n - 3)."""
    if n < 3:
        raise PreconditionError("maximal outerplanar graph needs n >= 3")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    stack = [(0, n - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        k = rng.randint(i + 1, j - 1)
        if k - i > 1:
            edges.append((i, k))
        if j - k > 1:
            edges.append((k, j))
        stack += [(i, k), (k, j)]
    return _relabel(n, edges, rng) if shuffle else Graph.from_edges(n, edges)


def pentagon_chain(faces: int, rng: random.Random | None = None) -> Graph:
    """2-connected outerplanar graph whose inner faces are all 5-cycles.

    Each new face is a 3-vertex path glued onto an outer edge, chosen at
    random when ``rng`` is given and otherwise the last edge of the cycle.
    """
    if faces < 1:
        raise PreconditionError("pentagon chain needs at least one face")
    cyc = [0, 1, 2, 3, 4]
    edges = [(i, (i + 1) % 5) for i in range(5)]
    n = 5
    for _ in range(faces - 1):
        i = rng.randrange(len(cyc)) if rng is not None else len(cyc) - 1
        a, b = cyc[i], cyc[(i + 1) % len(cyc)]
        new = [n, n + 1, n + 2]
        n += 3
        edges += [(a, new[0]), (new[0], new[1]), (new[1], new[2]), (new[2], b)]
        cyc[i + 1:i + 1] = new
    return Graph.from_edges(n, edges)


def random_outerplanar(n: int, rng: random.Random, keep: float = 0.5) -> Graph:
    """Random connected outerplanar graph: a polygon triangulation thinned out.

    Each chord survives with probability ``keep`` and each outer edge is
    dropped with probability ``1 - keep`` as long as the graph stays connected.
    """
    base = random_maximal_outerplanar(n, rng, shuffle=False)
    outer = {(i, i + 1) for i in range(n - 1)} | {(0, n - 1)}
    edges = [e for e in base.edges() if e in outer or rng.random() < keep]
    order = list(range(len(edges)))
    rng.shuffle(order)
    current = set(edges)
    for i in order:
        e = edges[i]
        if e in outer and rng.random() > keep:
            trial = current - {e}
            if is_connected(Graph.from_edges(n, trial)):
                current = trial
    return _relabel(n, sorted(current), rng)


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    edges = set(random_tree(n, rng).edges())
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(n, edges)


def random_cluster_plus_modulator(
    cliques: Sequence[int], d: int, rng: random.Random, p: float = 0.35
) -> tuple[Graph, StructuralCertificate]:
    """Disjoint cliques of the given sizes plus ``d`` modulator vertices wired randomly.

    The modulator is ``n-d..n-1``. Connectivity is forced by giving every
    clique at least one modulator neighbor and chaining modulator vertices
    through shared cliques where needed.
    """
    if d < 0 or any(s < 1 for s in cliques):
        raise PreconditionError("bad cluster parameters")
    if d == 0 and len(cliques) != 1:
        raise PreconditionError("without a modulator only a single clique is connected")
    edges: set[tuple[int, int]] = set()
    members: list[list[int]] = []
    nxt = 0
    for s in cliques:
        block = list(range(nxt, nxt + s))
        members.append(block)
        edges.update(combinations(block, 2))
        nxt += s
    modulator = list(range(nxt, nxt + d))
    n = nxt + d
    for x in modulator:
        for block in members:
            for w in block:
                if rng.random() < p:
                    edges.add((w, x))
    for u, v in combinations(modulator, 2):
        if rng.random() < p / 2:
            edges.add((u, v))
    if d:
        for block in members:
            if not any((w, x) in edges for w in block for x in modulator):
                edges.add((rng.choice(block), rng.choice(modulator)))
        # stitch components together through clique-modulator edges
        while True:
            g = Graph.from_edges(n, edges)
            comps = connected_components(g)
            if len(comps) == 1:
                break
            a, b = comps[0], comps[1]
            xa = [v for v in a if v in modulator] or [rng.choice(modulator)]
            wb = [v for v in b if v < nxt]
            if wb:
                edges.add((rng.choice(wb), rng.choice(xa)))
            else:
                wa = [v for v in a if v < nxt]
                edges.add((rng.choice(wa), rng.choice(b)))
    g = Graph.from_edges(n, edges)
    return g, StructuralCertificate("cluster_modulator", vertices=tuple(modulator))


def random_bounded_nd(
    types: int, rng: random.Random, max_class: int = 4, p: float = 0.5
) -> tuple[Graph, StructuralCertificate]:
    """Expand a random connected type graph; every type becomes a clique or independent set."""
    if types < 2:
        raise PreconditionError("need at least two types for a connected expansion")
    h = random_connected_graph(types, p, rng)
    sizes = [rng.randint(1, max_class) for _ in range(types)]
    flags = [rng.random() < 0.5 for _ in range(types)]
    classes = []
    nxt = 0
    for s in sizes:
        classes.append(tuple(range(nxt, nxt + s)))
        nxt += s
    edges = []
    for i, cls in enumerate(classes):
        if flags[i]:
            edges += list(combinations(cls, 2))
    for i, j in h.edges():
        edges += [(a, b) for a in classes[i] for b in classes[j]]
    cert = StructuralCertificate(
        "type_partition",
        classes=tuple(classes),
        clique_flags=tuple(f and len(c) > 1 for f, c in zip(flags, classes)),
        type_edges=tuple(h.edges()),
    )
    return Graph.from_edges(nxt, edges), cert


def random_planar(n: int, rng: random.Random, keep: float = 0.7) -> Graph:
    """Delaunay triangulation of random points, thinned while staying connected."""
    import numpy as np
    from scipy.spatial import Delaunay

    if n < 3:
        raise PreconditionError("planar generator needs n >= 3")
    pts = np.array([[rng.random(), rng.random()] for _ in range(n)])
    tri = Delaunay(pts)
    edges = set()
    for a, b, c in tri.simplices:
        for u, v in ((a, b), (b, c), (a, c)):
            edges.add((min(int(u), int(v)), max(int(u), int(v))))
    # keep a spanning tree, drop other edges at random
    tree = set()
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    ordered = sorted(edges)
    rng.shuffle(ordered)
    for u, v in ordered:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            tree.add((u, v))
    kept = tree | {e for e in ordered if e not in tree and rng.random() < keep}
    return Graph.from_edges(n, kept)


FAMILIES = (
    "path",
    "cycle",
    "star",
    "random_tree",
    "random_maximal_outerplanar",
    "random_outerplanar",
    "pentagon_chain",
    "random_cluster_plus_modulator",
    "random_bounded_nd",
    "random_planar",
    "subdivided_clique",
)


def generate_family(kind: str, params: dict, seed: int = 0) -> tuple[Graph, StructuralCertificate | None]:
    """Build one instance of a named family; planted certificates are returned when known."""
    rng = random.Random(seed)
    try:
        if kind == "path":
            return path_graph(int(params["n"])), None
        if kind == "cycle":
            return cycle_graph(int(params["n"])), None
        if kind == "star":
            return star_graph(int(params["n"]) - 1), None
        if kind == "random_tree":
            return random_tree(int(params["n"]), rng), None
        if kind == "random_maximal_outerplanar":
            return random_maximal_outerplanar(int(params["n"]), rng), None
        if kind == "random_outerplanar":
            return random_outerplanar(int(params["n"]), rng, float(params.get("keep", 0.5))), None
        if kind == "pentagon_chain":
            return pentagon_chain(int(params["faces"]), rng), None
        if kind == "random_cluster_plus_modulator":
            sizes = params["cliques"]
            if isinstance(sizes, str):
                sizes = [int(s) for s in sizes.split(",") if s]
            return random_cluster_plus_modulator([int(s) for s in sizes], int(params["d"]), rng)
        if kind == "random_bounded_nd":
            return random_bounded_nd(int(params["types"]), rng, int(params.get("max_class", 4)))
        if kind == "random_planar":
            return random_planar(int(params["n"]), rng), None
        if kind == "subdivided_clique":
            return generate_subdivided_clique(int(params["n"])), None
    except KeyError as exc:
        raise PreconditionError(f"family {kind!r} needs parameter {exc.args[0]!r}") from None
    raise PreconditionError(f"unknown family {kind!r}")
