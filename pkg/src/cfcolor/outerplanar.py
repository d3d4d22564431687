"""Four-color conflict-free coloring of outerplanar graphs.

Blocks are colored one at a time along the block tree so that each block
has at most one precolored vertex. Inside a 2-connected block the outer
cycle is recovered, the inner faces are traced, and faces are colored in
breadth-first order over the weak dual: a starting face first, then every
later face as an ear hanging off an already colored edge.

Every colored vertex ``v`` carries ``C(v)`` and ``U(v)``, the color of its
unique neighbor. Besides ``C(v) != U(v)`` and uniqueness of ``U(v)`` the
sweep keeps, on every edge that may still receive an ear, the star condition
``C(v) != C(w)`` and ``|{C(v), U(v), C(w), U(w)}| = 3``. Edges where a case
deliberately breaks it are logged as exempt and must border no uncolored
face.

Each case is written in a canonical frame (fixed colors for the already
colored endpoints). A palette permutation maps the frame onto the actual
colors before writing.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import InvariantViolation, PreconditionError
from .graph import Graph, is_connected, require_colorable
from .result import ColoringResult
from .verify import Coloring, verify_cfon

PALETTE = (1, 2, 3, 4)


@dataclass
class BlockTree:
    blocks: list[tuple[int, ...]]
    cut_vertices: frozenset[int]
    adjacency: dict[int, list[int]]

    def traversal(self, root_vertex: int = 0) -> list[tuple[int, int | None]]:
        """BFS over blocks from the first block holding ``root_vertex``; pairs (block, attach vertex)."""
        root = min(i for i, b in enumerate(self.blocks) if root_vertex in b)
        order = [(root, None)]
        seen = {root}
        queue = deque([root])
        while queue:
            i = queue.popleft()
            for j in self.adjacency[i]:
                if j not in seen:
                    seen.add(j)
                    shared = set(self.blocks[i]) & set(self.blocks[j])
                    order.append((j, min(shared)))
                    queue.append(j)
        return order


def block_decomposition(g: Graph) -> BlockTree:
    if g.n == 0 or not is_connected(g):
        raise PreconditionError("block decomposition needs a connected graph")
    nxg = g.to_networkx()
    blocks = sorted(tuple(sorted(b)) for b in nx.biconnected_components(nxg))
    cuts = frozenset(nx.articulation_points(nxg))
    holders: dict[int, list[int]] = {}
    for i, b in enumerate(blocks):
        for v in b:
            holders.setdefault(v, []).append(i)
    adjacency: dict[int, list[int]] = {i: [] for i in range(len(blocks))}
    for v in sorted(cuts):
        for i in holders[v]:
            for j in holders[v]:
                if i != j and j not in adjacency[i]:
                    adjacency[i].append(j)
    for i in adjacency:
        adjacency[i].sort()
    return BlockTree(blocks, cuts, adjacency)


def outer_cycle(g: Graph, vertices=None) -> tuple[list[int], list[tuple[int, int]]]:
    """Hamiltonian outer cycle and chord list of a 2-connected outerplanar block.

    Degree-2 vertices are shortcut (lowest id first) down to a triangle and
    then reinserted between their two former neighbors.
    """
    verts = sorted(range(g.n) if vertices is None else vertices)
    inside = set(verts)
    adj = {v: {w for w in g.adj[v] if w in inside} for v in verts}
    edges = {(min(u, w), max(u, w)) for u in verts for w in adj[u]}
    n, m = len(verts), len(edges)
    if n == 2 and m == 1:
        return verts, []
    if n < 3:
        raise PreconditionError("block needs an edge or at least three vertices")
    if m > 2 * n - 3:
        raise PreconditionError(f"not outerplanar: {m} edges exceed 2n-3 = {2 * n - 3}")
    work = {v: set(a) for v, a in adj.items()}
    removed = []
    while len(work) > 3:
        deg2 = [v for v in work if len(work[v]) == 2]
        if not deg2:
            raise PreconditionError("not outerplanar: no degree-2 vertex left to shortcut")
        v = min(deg2)
        u, w = sorted(work.pop(v))
        work[u].discard(v)
        work[w].discard(v)
        work[u].add(w)
        work[w].add(u)
        removed.append((v, u, w))
    cycle = sorted(work)
    if any(len(work[v]) != 2 for v in cycle):
        raise PreconditionError("not outerplanar: shortcutting did not end in a triangle")
    for v, u, w in reversed(removed):
        i = cycle.index(u)
        if cycle[(i + 1) % len(cycle)] == w:
            cycle.insert(i + 1, v)
        elif cycle[i - 1] == w:
            cycle.insert(i, v)
        else:
            raise PreconditionError("not outerplanar: shortcut cannot be reinserted")
    ring = {(min(a, b), max(a, b)) for a, b in zip(cycle, cycle[1:] + cycle[:1])}
    if not ring <= edges:
        raise PreconditionError("not outerplanar: recovered cycle is not Hamiltonian")
    start = cycle.index(min(cycle))
    cycle = cycle[start:] + cycle[:start]
    if len(cycle) > 2 and cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[1:][::-1]
    pos = {v: i for i, v in enumerate(cycle)}
    chords = sorted(edges - ring)
    spans = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in chords)
    for i, (a, b) in enumerate(spans):
        for c, d in spans[i + 1:]:
            if a < c < b < d:
                raise PreconditionError("not outerplanar: chords cross")
    return cycle, chords


def is_outerplanar(g: Graph) -> bool:
    try:
        tree = block_decomposition(g)
        for b in tree.blocks:
            if len(b) > 2:
                outer_cycle(g, b)
    except PreconditionError:
        return False
    return True


def trace_faces(cycle: list[int], chords) -> list[tuple[int, ...]]:
    """Inner faces of the convex drawing of ``cycle`` plus ``chords``, in discovery order."""
    L = len(cycle)
    if L < 3:
        return []
    pos = {v: i for i, v in enumerate(cycle)}
    nbrs: dict[int, list[int]] = {v: [] for v in cycle}
    for a, b in list(zip(cycle, cycle[1:] + cycle[:1])) + list(chords):
        nbrs[a].append(b)
        nbrs[b].append(a)

    def turn(u, v):
        # next vertex after the dart u -> v on the face to its left
        ku = (pos[u] - pos[v]) % L
        return max((x for x in nbrs[v] if (pos[x] - pos[v]) % L < ku), key=lambda x: (pos[x] - pos[v]) % L)

    starts = [(cycle[i], cycle[(i + 1) % L]) for i in range(L)]
    for a, b in sorted(chords):
        starts += [(a, b), (b, a)]
    seen = set()
    faces = []
    for dart in starts:
        if dart in seen:
            continue
        face = []
        u, v = dart
        while (u, v) not in seen:
            seen.add((u, v))
            face.append(u)
            u, v = v, turn(u, v)
        if (u, v) != dart:
            raise InvariantViolation("face tracing did not close")
        faces.append(tuple(face))
    if len(faces) != len(chords) + 1:
        raise InvariantViolation(f"traced {len(faces)} faces, expected {len(chords) + 1}")
    return faces


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@dataclass
class EarDecomposition:
    f0: int
    faces: list[tuple[int, ...]]
    order: list[int]
    parent_edge: dict[int, tuple[int, int]]
    ears: list[tuple[int, ...]]
    edge_faces: dict[tuple[int, int], list[int]]


def ear_decomposition(cycle: list[int], chords, f0: int = 0) -> EarDecomposition:
    """Faces in BFS order over the weak dual from ``f0``; each later face is an ear on its parent edge."""
    faces = trace_faces(cycle, chords)
    edge_faces: dict[tuple[int, int], list[int]] = {}
    for i, f in enumerate(faces):
        for a, b in zip(f, f[1:] + f[:1]):
            edge_faces.setdefault(_edge(a, b), []).append(i)
    if not faces:
        return EarDecomposition(0, [], [], {}, [], edge_faces)
    order = [f0]
    parent_edge: dict[int, tuple[int, int]] = {}
    queue = deque([f0])
    while queue:
        i = queue.popleft()
        f = faces[i]
        for a, b in zip(f, f[1:] + f[:1]):
            for j in edge_faces[_edge(a, b)]:
                if j != i and j not in parent_edge and j != f0:
                    parent_edge[j] = _edge(a, b)
                    order.append(j)
                    queue.append(j)
    if len(order) != len(faces):
        raise InvariantViolation("weak dual is not connected")
    ears = []
    for j in order[1:]:
        a, b = parent_edge[j]
        seq = _walk(faces[j], a, b)
        ears.append(tuple(seq[1:]) + (seq[0],))
    return EarDecomposition(f0, faces, order, parent_edge, ears, edge_faces)


def _walk(face, a: int, b: int) -> list[int]:
    """Face vertices starting ``a, b`` and continuing away from ``a``."""
    L = len(face)
    i = face.index(a)
    if face[(i + 1) % L] == b:
        step = 1
    elif face[(i - 1) % L] == b:
        step = -1
    else:
        raise InvariantViolation(f"{a + 1},{b + 1} not consecutive on face")
    return [face[(i + step * j) % L] for j in range(L)]


# Canonical patterns. Lists are indexed from v1 = 0; the already colored
# vertices of a face come first.


def _successor_witness(c: list[int]) -> list[int]:
    return [c[(i + 1) % len(c)] for i in range(len(c))]


def fresh_face_pattern(k: int) -> tuple[list[int], list[int]]:
    """Starting face with no colored vertex, ``k != 5``."""
    if k == 5 or k < 3:
        raise PreconditionError(f"fresh face pattern needs k >= 3, k != 5 (got {k})")
    c = [(1, 2, 3)[i % 3] for i in range(k)]
    if k % 3 == 1:
        c[k - 1] = 4
    elif k % 3 == 2:
        c[k - 4 : k] = [4, 2, 3, 4]
    return c, _successor_witness(c)


def one_precolored_pattern(k: int) -> tuple[list[int], list[int]]:
    """Face whose first vertex is fixed at C=1, U=2."""
    if k < 3:
        raise PreconditionError("face needs at least three vertices")
    if k == 3:
        return [1, 3, 4], [2, 1, 1]
    c = [1, 3, 2]
    for i in range(3, k):
        c.append(c[i - 3])
    if k % 3 in (0, 1):
        c[k - 1] = 4
    else:
        c[k - 2] = 4
    u = _successor_witness(c)
    u[0] = 2
    return c, u


def equal_edge_pattern(k: int) -> tuple[list[int], list[int]]:
    """Face on an edge whose ends share C=4 with U=1 (first) and U=2 (second)."""
    if k < 4:
        raise PreconditionError("equal-color edge face needs at least four vertices")
    if k == 4:
        return [4, 4, 1, 3], [1, 2, 4, 4]
    if k == 5:
        return [4, 4, 1, 2, 3], [1, 2, 2, 3, 4]
    c = [4, 4, 3, 2]
    for i in range(4, k):
        c.append(c[i - 3])
    if k % 3 == 0:
        c[k - 2] = 1
    elif k % 3 == 2:
        c[k - 2] = 1
        c[k - 1] = 2
    u = _successor_witness(c)
    u[0], u[1] = 1, 2
    return c, u


def ear_distinct_pattern(k: int) -> tuple[list[int], list[int]]:
    """Ear on an edge with v1=(1,U=2), v2=(2,U=3)."""
    if k == 3:
        return [1, 2, 4], [2, 3, 2]
    if k == 4:
        return [1, 2, 4, 3], [2, 3, 3, 1]
    c = [1, 2, 1, 3, 4]
    for i in range(5, k):
        c.append(c[i - 3])
    if k % 3 == 0:
        c[k - 2], c[k - 1] = 2, 4
    elif k % 3 == 1:
        c[k - 2] = 2
    u = _successor_witness(c)
    u[0], u[1] = 2, 3
    return c, u


def ear_shared_witness_pattern(k: int) -> tuple[list[int], list[int]]:
    """Ear with at least five vertices on an edge with v1=(1,U=3), v2=(2,U=3)."""
    if k == 5:
        return [1, 2, 1, 3, 2], [3, 3, 3, 2, 1]
    if k < 6:
        raise PreconditionError("shared-witness pattern handles faces of size >= 5")
    c = [1, 2, 4, 3]
    for i in range(4, k):
        c.append(c[i - 3])
    if k % 3 == 1:
        c[k - 3] = 1
        c[k - 1] = 2
    u = _successor_witness(c)
    u[0], u[1] = 3, 3
    return c, u


def side_face_pattern(k: int) -> tuple[list[int], list[int]]:
    """Colors and witnesses for w1..w_{k-2} of the non-triangular face next to a lone ear vertex."""
    w = [3, 1, 4][: k - 2]
    for i in range(3, k - 2):
        w.append(w[i - 3])
    if k % 3 == 0:
        w[k - 5], w[k - 4], w[k - 3] = 2, 1, 4
    if k == 6:
        return w, [4, 3, 2, 2]
    u = [w[i + 1] for i in range(k - 3)] + [2]
    return w, u


PENTAGON_START = ([1, 1, 2, 2, 3], [3, 2, 1, 3, 1])
# endpoint frame (C1, U1, C2, U2) -> colors, witnesses of w3, w4, w5
PENTAGON_EARS = (
    ((1, 2, 1, 3), (2, 2, 3), (1, 3, 1)),
    ((1, 2, 2, 3), (1, 3, 3), (2, 1, 1)),
    ((1, 2, 2, 1), (2, 3, 1), (3, 2, 3)),
    ((1, 2, 1, 2), (1, 2, 3), (2, 3, 1)),
)


def match_frame(canon, actual, palette=PALETTE) -> dict[int, int] | None:
    """Palette bijection sending each canonical color to the actual one, or ``None``."""
    pi: dict[int, int] = {}
    back: dict[int, int] = {}
    for c, a in zip(canon, actual):
        if pi.get(c, a) != a or back.get(a, c) != c:
            return None
        pi[c], back[a] = a, c
    rest = [a for a in palette if a not in back]
    for c in palette:
        if c not in pi:
            pi[c] = rest.pop(0)
    return pi


@dataclass
class CUState:
    C: dict[int, int] = field(default_factory=dict)
    U: dict[int, int] = field(default_factory=dict)
    usage: Counter = field(default_factory=Counter)
    exempt: list[tuple[int, int, str]] = field(default_factory=list)


class _BlockRun:
    """Coloring of one 2-connected block on top of the shared state."""

    def __init__(self, owner: "_Outerplanar", verts, attach):
        self.o = owner
        self.g = owner.g
        self.st = owner.state
        self.cycle, self.chords = outer_cycle(self.g, verts)
        self.pos = {v: i for i, v in enumerate(self.cycle)}
        faces = trace_faces(self.cycle, self.chords)
        if attach is None:
            self.pentagonal = all(len(f) == 5 for f in faces)
            f0 = 0 if self.pentagonal else min(i for i, f in enumerate(faces) if len(f) != 5)
        else:
            self.pentagonal = False
            f0 = min(i for i, f in enumerate(faces) if attach in f)
        self.ed = ear_decomposition(self.cycle, self.chords, f0)
        self.faces = self.ed.faces
        self.done: set[int] = set()
        self.attach = attach

    def run(self):
        f0 = self.ed.f0
        if self.pentagonal:
            self.o.count("pentagon-start")
            self._write(list(self.faces[f0]), *PENTAGON_START, {c: c for c in PALETTE}, 0)
            self._finish([f0], list(self.faces[f0]))
        elif self.attach is None:
            self.o.count("fresh-face")
            seq = list(self.faces[f0])
            self._write(seq, *fresh_face_pattern(len(seq)), {c: c for c in PALETTE}, 0)
            self._finish([f0], seq)
        else:
            v = self.attach
            f = self.faces[f0]
            seq = _walk(f, v, f[(f.index(v) + 1) % len(f)])
            pi = match_frame((1, 2), (self.st.C[v], self.st.U[v]))
            if pi is None:
                raise InvariantViolation(f"cut vertex {v + 1} has C = U")
            self.o.count("one-precolored")
            self._write(seq, *one_precolored_pattern(len(seq)), pi, 1)
            self._finish([f0], seq[1:])
        for j in self.ed.order[1:]:
            if j not in self.done:
                a, b = self.ed.parent_edge[j]
                self._ear(j, a, b)

    # helpers

    def _orient(self, a, b):
        return [(a, b), (b, a)] if self.pos[a] <= self.pos[b] else [(b, a), (a, b)]

    def _cu(self, v):
        return self.st.C[v], self.st.U[v]

    def _other(self, f: int, a: int, b: int) -> int | None:
        for j in self.ed.edge_faces.get(_edge(a, b), []):
            if j != f and j not in self.done:
                return j
        return None

    def _third(self, f: int, a: int, b: int) -> int:
        (x,) = set(self.faces[f]) - {a, b}
        return x

    def _write(self, seq, c, u, pi, start):
        for i in range(start, len(seq)):
            self.o.put(seq[i], pi[c[i]], pi[u[i]])

    def _put(self, v, c, u, pi):
        self.o.put(v, pi[c], pi[u])

    def _finish(self, faces, new, audit=True):
        for f in faces:
            self.done.add(f)
            face = self.faces[f]
            for a, b in zip(face, face[1:] + face[:1]):
                self.st.usage[_edge(a, b)] += 1
        if audit:
            self.o.audit_step(new, self, star=not self.pentagonal)

    def edge_is_closed(self, a, b) -> bool:
        return all(j in self.done for j in self.ed.edge_faces.get(_edge(a, b), []))

    # ears

    def _ear(self, f, a, b):
        (ca, ua), (cb, ub) = self._cu(a), self._cu(b)
        if self.pentagonal:
            return self._pentagon_ear(f, a, b)
        if ca == cb:
            if ua == ub:
                raise InvariantViolation(f"edge {a + 1}-{b + 1} has equal C and equal U")
            return self._equal_edge_face(f, a, b, "equal-C")
        for p, q in self._orient(a, b):
            pi = match_frame((1, 2, 2, 3), self._cu(p) + self._cu(q))
            if pi is not None:
                return self._ear_distinct(f, p, q, pi)
        if ua == ub:
            return self._ear_shared(f, a, b)
        raise InvariantViolation(f"edge {a + 1}-{b + 1} has an endpoint configuration outside the legal shapes")

    def _pentagon_ear(self, f, a, b):
        if len(self.faces[f]) != 5:
            raise InvariantViolation("non-pentagonal face in an all-pentagon block")
        for n, (frame, cs, us) in enumerate(PENTAGON_EARS, start=1):
            for p, q in self._orient(a, b):
                pi = match_frame(frame, self._cu(p) + self._cu(q), (1, 2, 3))
                if pi is not None:
                    self.o.count(f"pentagon-ear-{n}")
                    seq = _walk(self.faces[f], p, q)
                    self._write(seq, [0, 0, *cs], [0, 0, *us], pi, 2)
                    self._finish([f], seq[2:])
                    return
        raise InvariantViolation(f"pentagon ear on {a + 1}-{b + 1} with an unlisted endpoint configuration")

    def _equal_edge_face(self, f, a, b, label, pending=()):
        if len(self.faces[f]) < 4:
            raise InvariantViolation("equal-color edge on a triangular face")
        p, q = self._orient(a, b)[0]
        pi = match_frame((4, 1, 4, 2), self._cu(p) + self._cu(q))
        if pi is None:
            raise InvariantViolation(f"edge {a + 1}-{b + 1} is not an equal-C, distinct-U edge")
        self.o.count(label)
        seq = _walk(self.faces[f], p, q)
        self._write(seq, *equal_edge_pattern(len(seq)), pi, 2)
        self._finish([f], list(pending) + seq[2:])

    def _ear_distinct(self, f, p, q, pi):
        seq = _walk(self.faces[f], p, q)
        self.o.count(f"distinct-{min(len(seq), 5)}")
        self._write(seq, *ear_distinct_pattern(len(seq)), pi, 2)
        self._finish([f], seq[2:])

    def _ear_shared(self, f, a, b):
        k = len(self.faces[f])
        if k == 3:
            return self._shared_triangle(f, a, b)
        if k == 4:
            return self._shared_square(f, a, b)
        p, q = self._orient(a, b)[0]
        pi = match_frame((1, 3, 2, 3), self._cu(p) + self._cu(q))
        seq = _walk(self.faces[f], p, q)
        self.o.count("shared-5" if k == 5 else "shared-long")
        self._write(seq, *ear_shared_witness_pattern(k), pi, 2)
        self._finish([f], seq[2:])

    def _shared_frame(self, p, q):
        pi = match_frame((1, 3, 2, 3), self._cu(p) + self._cu(q))
        if pi is None:
            raise InvariantViolation("shared-witness frame does not fit")
        return pi

    def _shared_triangle(self, f, a, b):
        p, q = self._orient(a, b)[0]
        v3 = self._third(f, a, b)
        o13, o23 = self._other(f, p, v3), self._other(f, q, v3)
        if o13 is None and o23 is None:
            pi = self._shared_frame(p, q)
            self.o.count("shared-3-isolated")
            self._put(v3, 4, 2, pi)
            self._finish([f], [v3])
            return
        if o13 is None or o23 is None:
            if o23 is not None:
                p, q = q, p
            pi = self._shared_frame(p, q)
            self.o.count("shared-3-free-edge")
            self._put(v3, 4, 1, pi)
            self._finish([f], [v3])
            return
        size = lambda j: len(self.faces[j])
        if size(o23) != 3 or size(o13) != 3:
            if size(o23) == 3:
                p, q = q, p
                o13, o23 = o23, o13
            pi = self._shared_frame(p, q)
            self.o.count("shared-3-side-face")
            self._put(v3, 4, 1, pi)
            side = _walk(self.faces[o23], q, v3)
            w, wu = side_face_pattern(len(side))
            for v, c, u in zip(side[2:], w, wu):
                self._put(v, c, u, pi)
            self._finish([f, o23], [v3] + side[2:])
            return
        for p2, q2 in ((p, q), (q, p)):
            tx, ty = self._other(f, p2, v3), self._other(f, q2, v3)
            x = self._third(tx, p2, v3)
            tz = self._other(tx, x, v3)
            if tz is not None and size(tz) == 3:
                y = self._third(ty, q2, v3)
                z = self._third(tz, x, v3)
                pi = self._shared_frame(p2, q2)
                self.o.count("shared-3-fan")
                for v, c, u in ((v3, 1, 4), (x, 2, 3), (y, 4, 2), (z, 3, 1)):
                    self._put(v, c, u, pi)
                self._finish([f, tx, ty, tz], [v3, x, y, z])
                return
        tx, ty = o13, o23
        x, y = self._third(tx, p, v3), self._third(ty, q, v3)
        pi = self._shared_frame(p, q)
        self.o.count("shared-3-two-triangles")
        for v, c, u in ((v3, 4, 2), (x, 4, 1), (y, 1, 2)):
            self._put(v, c, u, pi)
        rest = self._other(tx, x, v3)
        self._finish([f, tx, ty], [v3, x, y], audit=rest is None)
        if rest is not None:
            self._equal_edge_face(rest, x, v3, "equal-C-handoff", [v3, x, y])

    def _shared_square(self, f, a, b):
        p, q = self._orient(a, b)[0]
        pi = self._shared_frame(p, q)
        _, _, v3, v4 = _walk(self.faces[f], p, q)
        t = self._other(f, v3, v4)
        if t is not None and len(self.faces[t]) == 3:
            x = self._third(t, v3, v4)
            self.o.count("shared-4-triangle")
            for v, c, u in ((v3, 1, 2), (v4, 4, 3), (x, 3, 1)):
                self._put(v, c, u, pi)
            self._finish([f, t], [v3, v4, x])
            return
        self.o.count("shared-4")
        self._put(v3, 4, 2, pi)
        self._put(v4, 4, 1, pi)
        self._finish([f], [v3, v4], audit=t is None)
        if t is not None:
            self._equal_edge_face(t, v3, v4, "equal-C-handoff", [v3, v4])


class _Outerplanar:
    def __init__(self, g: Graph):
        self.g = g
        self.state = CUState()
        self.cases: Counter = Counter()
        self.pentagon_blocks = 0

    def count(self, label):
        self.cases[label] += 1

    def put(self, v, c, u):
        if v in self.state.C:
            raise InvariantViolation(f"vertex {v + 1} colored twice")
        self.state.C[v] = c
        self.state.U[v] = u

    def audit_step(self, new, block: _BlockRun | None, star: bool):
        C, U = self.state.C, self.state.U
        touched = set(new)
        for v in new:
            touched.update(w for w in self.g.adj[v] if w in C)
        for v in sorted(touched):
            if C[v] == U[v]:
                raise InvariantViolation(f"vertex {v + 1} has C = U = {C[v]}")
            hits = sum(1 for w in self.g.adj[v] if C.get(w) == U[v])
            if hits != 1:
                raise InvariantViolation(f"witness color {U[v]} of vertex {v + 1} seen {hits} times")
        if not star:
            return
        for v in sorted(set(new)):
            for w in self.g.adj[v]:
                if w not in C or (w in touched and w in new and w < v):
                    continue
                if C[v] != C[w] and len({C[v], U[v], C[w], U[w]}) == 3:
                    continue
                closed = block is None or block.edge_is_closed(v, w)
                if not closed:
                    raise InvariantViolation(f"edge {v + 1}-{w + 1} breaks the star condition and still borders an uncolored face")
                label = "bridge" if block is None else "closed"
                self.state.exempt.append((min(v, w), max(v, w), label))

    def color_bridge(self, u, w, attach):
        if attach is None:
            self.count("bridge-root")
            self.put(u, 1, 2)
            self.put(w, 2, 1)
            self.audit_step([u, w], None, True)
            return
        other = w if attach == u else u
        pi = match_frame((1, 2), (self.state.C[attach], self.state.U[attach]))
        self.count("bridge")
        self.put(other, pi[3], pi[1])
        self.audit_step([other], None, True)

    def run(self):
        tree = block_decomposition(self.g)
        for i, attach in tree.traversal(0):
            b = tree.blocks[i]
            if len(b) == 2:
                self.color_bridge(b[0], b[1], attach)
            else:
                run = _BlockRun(self, b, attach)
                if run.pentagonal:
                    self.pentagon_blocks += 1
                run.run()
        return tree


def color_outerplanar(g: Graph) -> ColoringResult:
    """Conflict-free coloring with at most 4 colors (3 when the whole graph is one all-pentagon block)."""
    require_colorable(g)
    o = _Outerplanar(g)
    tree = o.run()
    colors = tuple(o.state.C[v] for v in range(g.n))
    witness = tuple(o.state.U[v] for v in range(g.n))
    coloring = Coloring(colors, witness)
    verdict = verify_cfon(g, coloring)
    if not verdict.valid:
        v, why = verdict.violations[0]
        raise InvariantViolation(f"outerplanar coloring invalid at vertex {v + 1}: {why}")
    single_pentagonal = len(tree.blocks) == 1 and o.pentagon_blocks == 1
    exempt = sorted(set(o.state.exempt))
    return ColoringResult(
        method="outerplanar",
        coloring=coloring,
        bound=3 if single_pentagonal else 4,
        parameter={"blocks": len(tree.blocks), "cut_vertices": len(tree.cut_vertices)},
        audit={
            "cases": dict(sorted(o.cases.items())),
            "pentagon_blocks": o.pentagon_blocks,
            "exempt_edges": [f"{a + 1}-{b + 1} ({why})" for a, b, why in exempt],
            "exempt_ok": True,
        },
    )


def color_ear(g: Graph, state: CUState, a: int, b: int, pentagonal: bool = False) -> list[str]:
    """Color the uncolored face on the colored edge ``a-b`` in place.

    Faces whose vertices are all colored count as done. Returns the case
    labels that fired (a case may also color neighboring faces).
    """
    holders = [blk for blk in block_decomposition(g).blocks if a in blk and b in blk]
    if not holders or len(holders[0]) < 3:
        raise PreconditionError(f"edge {a + 1}-{b + 1} does not lie on an inner face")
    o = _Outerplanar(g)
    o.state = state
    run = _BlockRun(o, holders[0], None)
    run.pentagonal = pentagonal
    run.done = {i for i, f in enumerate(run.faces) if all(v in state.C for v in f)}
    open_faces = [j for j in run.ed.edge_faces.get(_edge(a, b), []) if j not in run.done]
    if not open_faces:
        raise PreconditionError(f"edge {a + 1}-{b + 1} has no uncolored face")
    run._ear(open_faces[0], a, b)
    return sorted(o.cases)
