"""Conflict-free coloring with at most |F| + 2 colors from a feedback vertex set F.

Trees of G - F get a two-color coloring in which every non-root vertex's
unique neighbor is its parent. Vertices of F are then colored case by case,
keeping track of which neighbor serves as each vertex's unique one.

Every case application is guarded: before a batch of (re)colorings is
committed we check that every witness already established stays unique. The
first candidate in deterministic order that passes is taken; when the
canonical choice is rejected the deviation is recorded in the log.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import InvariantViolation, PreconditionError
from .graph import Graph, connected_components, is_forest, require_colorable
from .result import ColoringResult
from .verify import Coloring, verify_cfon


@dataclass
class RootedTree:
    vertices: tuple[int, ...]
    root: int
    special: int | None
    parent: dict[int, int | None]
    depth: dict[int, int]


def root_tree(g: Graph, vertices, root: int | None = None, allowed=None) -> RootedTree:
    """BFS-root the tree induced on ``vertices`` at ``root`` (default: lowest id)."""
    members = set(vertices)
    root = min(members) if root is None else root
    parent: dict[int, int | None] = {root: None}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w in members and w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
    kids = [w for w in g.adj[root] if w in members]
    special = min(kids) if kids else None
    return RootedTree(tuple(sorted(members)), root, special, parent, depth)


def color_tree(g: Graph, t: RootedTree, palette: tuple[int, int]) -> tuple[dict[int, int], dict[int, int]]:
    """Two-color a rooted tree; returns (colors, witness vertex per vertex)."""
    if t.special is None:
        raise PreconditionError("a single vertex tree has no conflict-free coloring")
    ca, cb = palette
    colors: dict[int, int] = {}
    witness: dict[int, int] = {}
    for v in sorted(t.vertices, key=lambda x: (t.depth[x], x)):
        p = t.parent[v]
        if v == t.root:
            colors[v] = ca
            witness[v] = t.special
        elif v == t.special:
            colors[v] = cb
            witness[v] = p
        elif p == t.root:
            colors[v] = ca
            witness[v] = p
        else:
            grand = t.parent[p]
            colors[v] = cb if colors[grand] == ca else ca
            witness[v] = p
    return colors, witness


def deepest_neighbor(g: Graph, t: RootedTree, v: int) -> int:
    """Deepest neighbor of ``v`` in ``t``; ties avoid the special vertex, then lowest id."""
    cand = [w for w in g.adj[v] if w in t.depth]
    if not cand:
        raise PreconditionError(f"vertex {v + 1} has no neighbor in the tree")
    return min(cand, key=lambda w: (-t.depth[w], w == t.special, w))


class _State:
    """Colors plus witness vertices, with a guarded commit."""

    def __init__(self, g: Graph):
        self.g = g
        self.C: dict[int, int] = {}
        self.W: dict[int, int] = {}

    def ok_after(self, colors: dict[int, int], witnesses: dict[int, int]) -> bool:
        g = self.g

        def col(x):
            return colors[x] if x in colors else self.C.get(x)

        touched = set(witnesses)
        for x in colors:
            touched.add(x)
            touched.update(g.adj[x])
        for x in touched:
            w = witnesses.get(x, self.W.get(x))
            if w is None:
                continue
            cw = col(w)
            if cw is None or not g.has_edge(x, w):
                return False
            if sum(1 for y in g.adj[x] if col(y) == cw) != 1:
                return False
        return True

    def commit(self, colors: dict[int, int], witnesses: dict[int, int]) -> bool:
        if not self.ok_after(colors, witnesses):
            return False
        self.C.update(colors)
        self.W.update(witnesses)
        return True

    def unique_neighbor(self, x: int) -> int | None:
        counts: dict[int, int] = {}
        for y in self.g.adj[x]:
            if y in self.C:
                counts[self.C[y]] = counts.get(self.C[y], 0) + 1
        for y in self.g.adj[x]:
            if y in self.C and counts[self.C[y]] == 1:
                return y
        return None


def _forest(g: Graph, fset: set[int]):
    rest, old = g.without(fset)
    trees: list[RootedTree] = []
    singletons: list[int] = []
    for comp in connected_components(rest):
        verts = [old[i] for i in comp]
        if len(verts) == 1:
            singletons.append(verts[0])
        else:
            trees.append(root_tree(g, verts))
    trees.sort(key=lambda t: t.root)
    return trees, sorted(singletons)


def _check_input(g: Graph, f) -> list[int]:
    require_colorable(g)
    fl = sorted(set(f))
    if any(not 0 <= v < g.n for v in fl):
        raise PreconditionError("feedback vertex set names a vertex outside the graph")
    rest, _ = g.without(fl)
    if not is_forest(rest):
        raise PreconditionError("given set is not a feedback vertex set")
    return fl


def _finish(g: Graph, st: _State, method: str, bound: int, log: list[str], fsize: int) -> ColoringResult:
    if len(st.C) != g.n:
        raise InvariantViolation("some vertex left uncolored")
    colors = tuple(st.C[v] for v in range(g.n))
    witness = tuple(st.C[st.W[v]] for v in range(g.n))
    c = Coloring(colors, witness)
    verdict = verify_cfon(g, c)
    if not verdict.valid:
        raise InvariantViolation(f"coloring fails at vertex {verdict.violations[0][0] + 1}")
    return ColoringResult(method, c, bound, {"fvs": fsize}, log)


# ---------------------------------------------------------------- |F| = 1


def color_fvs1(g: Graph, f) -> ColoringResult:
    fl = _check_input(g, f)
    if len(fl) != 1:
        raise PreconditionError("single-vertex routine needs |F| = 1")
    v = fl[0]
    st = _State(g)
    log: list[str] = []
    trees, singletons = _forest(g, {v})
    for t in trees:
        cols, wit = color_tree(g, t, (2, 3))
        st.C.update(cols)
        st.W.update(wit)
    for w in singletons:
        st.C[w] = 2
        st.W[w] = v
    st.C[v] = 1

    if singletons:
        w = singletons[0]
        st.commit({w: 1}, {v: w})
        log.append(f"case 1: singleton {w + 1} recolored 1")
        return _finish(g, st, "fvs", 3, log, 1)

    def case2(t: RootedTree) -> bool:
        if not any(w in t.depth for w in g.adj[v]):
            return False
        d = deepest_neighbor(g, t, v)
        if d != t.special or not g.has_edge(t.root, v):
            if st.commit({d: 1}, {v: d}):
                log.append(f"case 2: deepest neighbor {d + 1} recolored 1")
                return True
        return False

    for t in trees:
        if case2(t):
            return _finish(g, st, "fvs", 3, log, 1)
    big = [t for t in trees if len(t.vertices) >= 3]
    if big:
        t = big[0]
        new_root = min(set(t.vertices) - {t.root, t.special})
        nt = root_tree(g, t.vertices, new_root)
        for x in t.vertices:
            st.W.pop(x, None)
        cols, wit = color_tree(g, nt, (2, 3))
        st.C.update(cols)
        st.W.update(wit)
        log.append(f"case 3: tree re-rooted at {new_root + 1}")
        if case2(nt):
            return _finish(g, st, "fvs", 3, log, 1)
        raise InvariantViolation("re-rooted tree still has its special vertex deepest")
    t0 = trees[0]
    for w in range(g.n):
        if w != v and w not in t0.depth:
            st.C[w] = 2
    st.W[v] = t0.special
    log.append("case 3: all trees are edges, recolored to 2 except the first")
    return _finish(g, st, "fvs", 3, log, 1)


# ---------------------------------------------------------------- general |F|


def color_by_fvs(g: Graph, f) -> ColoringResult:
    """Color ``g`` with at most ``len(f) + 2`` colors given a feedback vertex set ``f``."""
    fl = _check_input(g, f)
    if not fl:
        t = root_tree(g, range(g.n))
        cols, wit = color_tree(g, t, (1, 2))
        st = _State(g)
        st.C.update(cols)
        st.W.update(wit)
        return _finish(g, st, "fvs", 2, ["forest: tree coloring"], 0)
    if len(fl) == 1:
        return color_fvs1(g, fl)

    k = len(fl)
    index = {v: i + 1 for i, v in enumerate(fl)}
    vert = {i + 1: v for i, v in enumerate(fl)}
    fset = set(fl)
    a, b = k + 1, k + 2
    st = _State(g)
    log: list[str] = []
    trees, singletons = _forest(g, fset)
    tree_of: dict[int, RootedTree] = {}
    for t in trees:
        cols, wit = color_tree(g, t, (a, b))
        st.C.update(cols)
        st.W.update(wit)
        for x in t.vertices:
            tree_of[x] = t
    free = 0
    ys = [v for v in fl if any(w in fset for w in g.adj[v])]
    for v in ys:
        st.C[v] = index[v]
    for v in ys:
        st.W[v] = min((w for w in g.adj[v] if w in fset), key=lambda w: index[w])
    if ys:
        free = index[ys[0]]

    def uncolored_f():
        return [v for v in fl if v not in st.C]

    # case 1: singletons with uncolored neighbors
    for w in singletons:
        todo = sorted((x for x in g.adj[w] if x not in st.C), key=lambda x: index[x])
        if not todo:
            continue
        i1 = index[todo[0]]
        colors = {w: i1, todo[0]: i1}
        wits = {w: todo[0]}
        if len(todo) > 1:
            i2 = index[todo[1]]
            for x in todo[1:]:
                colors[x] = i2
        for x in todo:
            wits[x] = w
        if not st.commit(colors, wits):
            raise InvariantViolation(f"case 1 at singleton {w + 1} breaks an earlier witness")
        free = i1
        log.append(f"case 1: singleton {w + 1} with {len(todo)} uncolored neighbors")

    # case 2: singletons whose colored neighborhood has no unique color
    pending = [w for w in singletons if w not in st.W]
    progress = True
    while progress:
        progress = False
        for w in pending:
            if w in st.W or st.unique_neighbor(w) is not None:
                continue
            done = False
            nb = sorted(g.adj[w], key=lambda x: index[x])
            present = {st.C[x] for x in nb}
            for p in range(len(nb)):
                for q in range(len(nb)):
                    x1, x2 = nb[p], nb[q]
                    if x1 == x2 or st.C[x1] != st.C[x2]:
                        continue
                    i1 = index[x1]
                    if i1 in present:
                        continue
                    if st.commit({x1: i1, w: a}, {w: x1}):
                        free = i1
                        log.append(f"case 2: singleton {w + 1} via F-vertex {x1 + 1}")
                        done = progress = True
                        break
                if done:
                    break
    for w in singletons:
        if w not in st.C:
            if not st.commit({w: a}, {}):
                raise InvariantViolation(f"coloring singleton {w + 1} breaks a witness")
        if w not in st.W:
            u = st.unique_neighbor(w)
            if u is None:
                raise InvariantViolation(f"singleton {w + 1} has no unique neighbor after case 2")
            st.W[w] = u

    # cases 3 and 4, first applicable wins, repeated
    used_special: set[int] = set()
    while uncolored_f():
        applied = False
        for t in trees:
            s = t.special
            if s in used_special:
                continue
            hits = sorted((x for x in g.adj[s] if x in fset and x not in st.C), key=lambda x: index[x])
            if len(hits) >= 2:
                i1, i2 = index[hits[0]], index[hits[1]]
                colors = {s: i1}
                colors.update({x: i2 for x in hits})
                if st.commit(colors, {x: s for x in hits}):
                    free = i2
                    used_special.add(s)
                    log.append(f"case 3: special vertex {s + 1} serves {len(hits)} F-vertices")
                    applied = True
                    break
        if applied:
            continue
        for v in uncolored_f():
            i = index[v]
            for t in trees:
                if not any(w in t.depth for w in g.adj[v]):
                    continue
                d = deepest_neighbor(g, t, v)
                if d != t.special or not g.has_edge(t.root, v):
                    if st.commit({d: i, v: i}, {v: d}):
                        free = i
                        log.append(f"case 4: F-vertex {v + 1} via deepest neighbor {d + 1}")
                        applied = True
                        break
            if applied:
                break
        if not applied:
            break

    # case 5: remaining F-vertices see each tree in {root, special} or not at all
    for v in uncolored_f():
        i = index[v]
        done = False
        if free == 0:
            raise InvariantViolation("no free color in the last case; graph would be disconnected")
        palette = [free] + [c for c in range(1, b + 1) if c != free]
        for t in trees:
            if set(w for w in g.adj[v] if w in t.depth) != {t.root, t.special}:
                continue
            for c in palette:
                if st.commit({t.special: i, v: c}, {v: t.special}):
                    if c != free:
                        log.append(f"case 5: F-vertex {v + 1} took color {c} instead of free color {free}")
                    else:
                        log.append(f"case 5: F-vertex {v + 1} via special vertex {t.special + 1}")
                    done = True
                    break
            if done:
                break
        if not done:
            _rescue(g, st, v, k, index, log)
    return _finish(g, st, "fvs", k + 2, log, k)


def _rescue(g: Graph, st: _State, v: int, k: int, index: dict[int, int], log: list[str]) -> None:
    """Last resort for an F-vertex no listed case could place: try every
    color for ``v`` together with one recolored neighbor, guard deciding.
    """
    palette = range(1, k + 3)
    for w in sorted(g.adj[v]):
        if w not in st.C:
            continue
        for cw in palette:
            for cv in palette:
                if st.commit({w: cw, v: cv}, {v: w}):
                    log.append(f"rescue: F-vertex {v + 1} via neighbor {w + 1} recolored {cw}")
                    return
    raise InvariantViolation(f"no case applies to F-vertex {v + 1}")
