"""Path decompositions (validation, nice and semi-nice normal forms) and exact
small-instance structural certificates: pathwidth, feedback vertex sets,
cluster modulators and neighborhood-type partitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import OracleCapExceeded, ParseError, PreconditionError
from .graph import Graph, StructuralCertificate, is_forest

Bag = tuple[int, ...]
Tag = tuple  # ("E",) | ("I", v) | ("F", v) | ("S", v, w)


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[Bag, ...]

    @classmethod
    def of(cls, bags: Sequence[Sequence[int]]) -> "PathDecomposition":
        return cls(tuple(tuple(sorted(set(b))) for b in bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1


@dataclass(frozen=True)
class SemiNicePathDecomposition:
    bags: tuple[Bag, ...]
    tags: tuple[Tag, ...]

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def untagged(self) -> PathDecomposition:
        return PathDecomposition(self.bags)


@dataclass
class DecompositionVerdict:
    valid: bool
    violations: list[str] = field(default_factory=list)
    width: int = -1


def validate_path_decomposition(g: Graph, pd: PathDecomposition) -> DecompositionVerdict:
    """Check vertex coverage, edge coverage and contiguity of every vertex's bags."""
    problems = []
    where: list[list[int]] = [[] for _ in range(g.n)]
    for i, bag in enumerate(pd.bags):
        for v in bag:
            if not 0 <= v < g.n:
                problems.append(f"bag {i + 1}: vertex {v + 1} not in graph")
                continue
            where[v].append(i)
    for v in range(g.n):
        if not where[v]:
            problems.append(f"vertex {v + 1} in no bag")
        elif where[v][-1] - where[v][0] + 1 != len(where[v]):
            problems.append(f"vertex {v + 1} non-contiguous (bags {[i + 1 for i in where[v]]})")
    bagsets = [set(b) for b in pd.bags]
    for u, v in g.edges():
        if not any(u in b and v in b for b in bagsets):
            problems.append(f"edge {{{u + 1},{v + 1}}} uncovered")
    return DecompositionVerdict(not problems, problems, pd.width)


def _require_valid(g: Graph | None, pd: PathDecomposition) -> None:
    if g is not None:
        verdict = validate_path_decomposition(g, pd)
        if not verdict.valid:
            raise PreconditionError("invalid path decomposition: " + "; ".join(verdict.violations))
        return
    first: dict[int, int] = {}
    last: dict[int, int] = {}
    counts: dict[int, int] = {}
    for i, bag in enumerate(pd.bags):
        for v in bag:
            first.setdefault(v, i)
            last[v] = i
            counts[v] = counts.get(v, 0) + 1
    for v, c in counts.items():
        if last[v] - first[v] + 1 != c:
            raise PreconditionError(f"invalid path decomposition: vertex {v + 1} non-contiguous")


def make_nice(pd: PathDecomposition, g: Graph | None = None) -> PathDecomposition:
    """Interleave single forgets and introduces (ascending id) between empty endpoints."""
    _require_valid(g, pd)
    out: list[Bag] = [()]
    current: set[int] = set()
    for bag in list(pd.bags) + [()]:
        target = set(bag)
        for v in sorted(current - target):
            current.discard(v)
            out.append(tuple(sorted(current)))
        for v in sorted(target - current):
            current.add(v)
            out.append(tuple(sorted(current)))
    return PathDecomposition(tuple(out))


def _transition_tag(prev: set[int], cur: set[int]) -> Tag:
    added = cur - prev
    removed = prev - cur
    if len(added) == 1 and not removed:
        return ("I", next(iter(added)))
    if len(removed) == 1 and not added:
        return ("F", next(iter(removed)))
    raise PreconditionError("decomposition is not nice: consecutive bags differ by more than one vertex")


def make_semi_nice(g: Graph, nice: PathDecomposition, log: list | None = None) -> SemiNicePathDecomposition:
    """Repair introduce bags that contain no neighbor of the introduced vertex.

    The leftmost violation is fixed first and the scan restarts after every
    repair. The vertex is delayed to the first bag holding one of its
    neighbors; if that neighbor has no other neighbor there, both are
    introduced together in a special bag. ``log`` (if given) receives one
    ``(case, v, v_hat)`` entry per repair.
    """
    if g.isolated_vertices():
        raise PreconditionError(f"isolated vertex {g.isolated_vertices()[0] + 1}")
    _require_valid(g, nice)
    bags = [set(b) for b in nice.bags]
    if bags and (bags[0] or bags[-1]):
        raise PreconditionError("nice decomposition must start and end with an empty bag")
    tags: list[Tag] = [("E",)]
    for i in range(1, len(bags)):
        tags.append(_transition_tag(bags[i - 1], bags[i]))

    def first_violation():
        for p, tag in enumerate(tags):
            if tag[0] == "I" and not (g.nbr_set(tag[1]) & bags[p]):
                return p
        return None

    while True:
        p1 = first_violation()
        if p1 is None:
            break
        v = tags[p1][1]
        nv = g.nbr_set(v)
        q = next(i for i in range(p1 + 1, len(bags)) if nv & bags[i])
        v_hat = min(nv & bags[q])
        for i in range(p1 + 1, q):
            bags[i].discard(v)
        if len(g.nbr_set(v_hat) & bags[q]) > 1:
            # delay v: X_q minus v introduces v_hat, X_q introduces v
            new_bag = bags[q] - {v}
            bags = bags[:p1] + bags[p1 + 1 : q] + [new_bag] + bags[q:]
            tags = tags[:p1] + tags[p1 + 1 : q] + [tags[q]] + [("I", v)] + tags[q + 1 :]
            if log is not None:
                log.append((1, v, v_hat))
        else:
            bags = bags[:p1] + bags[p1 + 1 :]
            tags = tags[:p1] + tags[p1 + 1 : q] + [("S", v, v_hat)] + tags[q + 1 :]
            if log is not None:
                log.append((2, v, v_hat))
    snd = SemiNicePathDecomposition(tuple(tuple(sorted(b)) for b in bags), tuple(tags))
    problems = check_semi_nice(g, snd)
    if problems:
        raise AssertionError("fix-up produced an invalid decomposition: " + "; ".join(problems))
    return snd


def check_semi_nice(g: Graph, snd: SemiNicePathDecomposition) -> list[str]:
    """Return the list of semi-nice axiom violations (empty when valid)."""
    problems = list(validate_path_decomposition(g, snd.untagged()).violations)
    bags = [set(b) for b in snd.bags]
    if not bags or bags[0] or bags[-1]:
        problems.append("first and last bags must be empty")
        return problems
    if len(snd.tags) != len(bags):
        problems.append("tag count differs from bag count")
        return problems
    if snd.tags[0] != ("E",):
        problems.append("bag 1 must be tagged E")
    for p in range(1, len(bags)):
        tag = snd.tags[p]
        prev, cur = bags[p - 1], bags[p]
        if tag[0] == "I":
            v = tag[1]
            if cur != prev | {v} or v in prev:
                problems.append(f"bag {p + 1}: tag I {v + 1} does not match contents")
            elif not g.nbr_set(v) & cur:
                problems.append(f"bag {p + 1}: introduced vertex {v + 1} has no neighbor in its bag")
        elif tag[0] == "F":
            v = tag[1]
            if cur != prev - {v} or v not in prev:
                problems.append(f"bag {p + 1}: tag F {v + 1} does not match contents")
        elif tag[0] == "S":
            v, w = tag[1], tag[2]
            if v == w or cur != prev | {v, w} or v in prev or w in prev:
                problems.append(f"bag {p + 1}: special tag does not match contents")
            elif g.nbr_set(v) & cur != {w} or g.nbr_set(w) & cur != {v}:
                problems.append(f"bag {p + 1}: special pair {v + 1},{w + 1} not mutually pendant in bag")
        else:
            problems.append(f"bag {p + 1}: unexpected tag {tag!r}")
    return problems


def count_violations(g: Graph, pd: PathDecomposition) -> int:
    bags = [set(b) for b in pd.bags]
    total = 0
    for i in range(1, len(bags)):
        added = bags[i] - bags[i - 1]
        if len(added) == 1 and not g.nbr_set(next(iter(added))) & bags[i]:
            total += 1
    return total


# ---------------------------------------------------------------- exact pathwidth


def vertex_separation_order(g: Graph, n_cap: int = 12) -> tuple[int, list[int]]:
    """Minimum vertex separation number and an optimal vertex order (subset DP)."""
    if g.n > n_cap:
        raise OracleCapExceeded(f"{g.n} vertices exceeds pathwidth cap {n_cap}")
    n = g.n
    masks = [sum(1 << w for w in g.adj[v]) for v in range(n)]
    full = (1 << n) - 1
    boundary = [0] * (1 << n)
    for s in range(1, 1 << n):
        outside = full & ~s
        boundary[s] = sum(1 for v in range(n) if s >> v & 1 and masks[v] & outside)
    best = [0] * (1 << n)
    choice = [-1] * (1 << n)
    for s in range(1, 1 << n):
        top = None
        r = s
        while r:
            b = r & -r
            v = b.bit_length() - 1
            prev = s ^ b
            val = max(best[prev], boundary[prev])
            if top is None or val < top:
                top, choice[s] = val, v
            r ^= b
        best[s] = top
    order = []
    s = full
    while s:
        v = choice[s]
        order.append(v)
        s ^= 1 << v
    order.reverse()
    return best[full], order


def decomposition_from_order(g: Graph, order: Sequence[int]) -> PathDecomposition:
    placed: set[int] = set()
    bags = []
    for v in order:
        frontier = {u for u in placed if any(w not in placed for w in g.adj[u])}
        bags.append(tuple(sorted(frontier | {v})))
        placed.add(v)
    return PathDecomposition(tuple(bags))


def pathwidth_exact_small(g: Graph, n_cap: int = 12) -> PathDecomposition:
    """Minimum-width path decomposition by exhaustive vertex-order search."""
    if g.n == 0:
        return PathDecomposition(())
    _, order = vertex_separation_order(g, n_cap)
    return decomposition_from_order(g, order)


# ---------------------------------------------------------------- FVS


def _prune_low_degree(adj: dict[int, set[int]]) -> None:
    stack = [v for v, s in adj.items() if len(s) <= 1]
    while stack:
        v = stack.pop()
        if v not in adj or len(adj[v]) > 1:
            continue
        for w in adj.pop(v):
            adj[w].discard(v)
            if len(adj[w]) <= 1:
                stack.append(w)


def _shortest_cycle(adj: dict[int, set[int]]) -> list[int]:
    best: list[int] | None = None
    for s in sorted(adj):
        parent = {s: None}
        depth = {s: 0}
        queue = [s]
        found = None
        for u in queue:
            for w in sorted(adj[u]):
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif parent[u] != w:
                    found = (u, w)
                    break
            if found:
                break
        if found is None:
            continue
        u, w = found
        pu, pw = [u], [w]
        while pu[-1] is not None:
            pu.append(parent[pu[-1]])
        while pw[-1] is not None:
            pw.append(parent[pw[-1]])
        pu.pop()
        pw.pop()
        common = set(pu) & set(pw)
        cyc = [x for x in pu if x not in common] + [x for x in pw if x not in common]
        meet = next(x for x in pu if x in common)
        cyc.append(meet)
        if best is None or len(cyc) < len(best):
            best = cyc
        if len(best) == 3:
            break
    assert best is not None
    return sorted(best)


def _fvs_branch(adj: dict[int, set[int]], k: int) -> list[int] | None:
    adj = {v: set(s) for v, s in adj.items()}
    _prune_low_degree(adj)
    if not adj:
        return []
    if k == 0:
        return None
    for v in _shortest_cycle(adj):
        sub = {u: s - {v} for u, s in adj.items() if u != v}
        rest = _fvs_branch(sub, k - 1)
        if rest is not None:
            return sorted(rest + [v])
    return None


def compute_fvs_exact(g: Graph, k_max: int | None = None) -> tuple[int, ...] | None:
    """Smallest vertex set whose removal leaves a forest, or ``None`` if larger than ``k_max``."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    limit = g.n if k_max is None else k_max
    for k in range(limit + 1):
        found = _fvs_branch(adj, k)
        if found is not None:
            return tuple(found)
    return None


# ---------------------------------------------------------------- cluster modulator


def _find_p3(adj: dict[int, set[int]]) -> tuple[int, int, int] | None:
    for b in sorted(adj):
        nb = sorted(adj[b])
        for i, a in enumerate(nb):
            for c in nb[i + 1 :]:
                if c not in adj[a]:
                    return a, b, c
    return None


def _cluster_branch(adj: dict[int, set[int]], k: int) -> list[int] | None:
    p3 = _find_p3(adj)
    if p3 is None:
        return []
    if k == 0:
        return None
    for v in sorted(p3):
        sub = {u: s - {v} for u, s in adj.items() if u != v}
        rest = _cluster_branch(sub, k - 1)
        if rest is not None:
            return sorted(rest + [v])
    return None


def compute_cluster_modulator_exact(g: Graph, d_max: int | None = None) -> tuple[int, ...] | None:
    """Smallest X such that G - X is a disjoint union of cliques (``None`` if above ``d_max``)."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    limit = g.n if d_max is None else d_max
    for k in range(limit + 1):
        found = _cluster_branch(adj, k)
        if found is not None:
            return tuple(found)
    return None


def is_cluster_graph(g: Graph) -> bool:
    return _find_p3({v: set(g.adj[v]) for v in range(g.n)}) is None


# ---------------------------------------------------------------- types


def compute_type_partition(g: Graph) -> StructuralCertificate:
    """Coarsest partition into twin classes together with the type graph.

    Singleton classes are flagged as independent.
    """
    groups: dict[tuple[str, frozenset[int]], list[int]] = {}
    for v in range(g.n):
        groups.setdefault(("open", g.nbr_set(v)), []).append(v)
        groups.setdefault(("closed", g.nbr_set(v) | {v}), []).append(v)
    owner = list(range(g.n))
    is_clique = [False] * g.n
    for (kind, _), members in groups.items():
        if len(members) > 1:
            for v in members:
                owner[v] = members[0]
                is_clique[v] = kind == "closed"
    by_owner: dict[int, list[int]] = {}
    for v in range(g.n):
        by_owner.setdefault(owner[v], []).append(v)
    classes = sorted((tuple(m) for m in by_owner.values()), key=lambda c: c[0])
    flags = tuple(len(c) > 1 and is_clique[c[0]] for c in classes)
    reps = [c[0] for c in classes]
    type_edges = tuple(
        (i, j) for i in range(len(reps)) for j in range(i + 1, len(reps)) if g.has_edge(reps[i], reps[j])
    )
    return StructuralCertificate("type_partition", classes=tuple(classes), clique_flags=flags, type_edges=type_edges)


def type_graph(cert: StructuralCertificate) -> Graph:
    return Graph.from_edges(len(cert.classes), cert.type_edges)


def clique_independent_counts(cert: StructuralCertificate) -> tuple[int, int]:
    """(cl, ind): non-singleton clique classes and non-singleton independent classes."""
    cl = sum(1 for c, f in zip(cert.classes, cert.clique_flags) if len(c) > 1 and f)
    ind = sum(1 for c, f in zip(cert.classes, cert.clique_flags) if len(c) > 1 and not f)
    return cl, ind


def check_certificate(g: Graph, cert: StructuralCertificate) -> None:
    """Raise :class:`PreconditionError` unless ``cert`` witnesses its property on ``g``."""
    if cert.kind == "fvs":
        rest, _ = g.without(cert.vertices)
        if not is_forest(rest):
            raise PreconditionError("feedback vertex set leaves a cycle")
    elif cert.kind == "cluster_modulator":
        rest, _ = g.without(cert.vertices)
        if not is_cluster_graph(rest):
            raise PreconditionError("modulator leaves an induced path on three vertices")
    elif cert.kind == "type_partition":
        seen = sorted(v for c in cert.classes for v in c)
        if seen != list(range(g.n)):
            raise PreconditionError("type classes do not partition the vertex set")
        owner = {v: i for i, c in enumerate(cert.classes) for v in c}
        hedges = {tuple(sorted(e)) for e in cert.type_edges}
        for i, cls in enumerate(cert.classes):
            clique = cert.clique_flags[i] if i < len(cert.clique_flags) else False
            for a in cls:
                for b in cls:
                    if a < b and g.has_edge(a, b) != clique:
                        raise PreconditionError(f"class {i + 1} is neither the declared clique nor independent")
        for u in range(g.n):
            for v in range(u + 1, g.n):
                i, j = owner[u], owner[v]
                if i != j and g.has_edge(u, v) != ((min(i, j), max(i, j)) in hedges):
                    raise PreconditionError(f"pair {u + 1},{v + 1} contradicts the type graph")
    else:
        raise PreconditionError(f"unknown certificate kind {cert.kind!r}")


# ---------------------------------------------------------------- text format


def _fmt_tag(tag: Tag) -> str:
    return " ".join([tag[0]] + [str(v + 1) for v in tag[1:]])


def serialize_decomposition(pd: PathDecomposition | SemiNicePathDecomposition, n: int) -> str:
    size = max((len(b) for b in pd.bags), default=0)
    lines = [f"s pd {len(pd.bags)} {size} {n}"]
    tags = getattr(pd, "tags", None)
    for i, bag in enumerate(pd.bags):
        parts = ["b", str(i + 1)]
        if tags is not None:
            parts.append(_fmt_tag(tags[i]))
        parts += [str(v + 1) for v in bag]
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_decomposition(text: str) -> PathDecomposition | SemiNicePathDecomposition:
    header = None
    bags: list[Bag] = []
    tags: list[Tag] = []
    tagged = None
    arity = {"E": 0, "I": 1, "F": 1, "S": 2}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if len(parts) != 5 or parts[1] != "pd":
                raise ParseError(f"bad header {line!r}", lineno)
            try:
                header = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise ParseError(f"bad header {line!r}", lineno) from None
            continue
        if parts[0] != "b" or len(parts) < 2:
            raise ParseError(f"expected a bag line, got {line!r}", lineno)
        if header is None:
            raise ParseError("bag line before 's pd' header", lineno)
        try:
            idx = int(parts[1])
        except ValueError:
            raise ParseError(f"bad bag index in {line!r}", lineno) from None
        if idx != len(bags) + 1:
            raise ParseError(f"bag index {idx} out of order", lineno)
        rest = parts[2:]
        has_tag = bool(rest) and rest[0] in arity
        if tagged is None:
            tagged = has_tag
        elif tagged != has_tag:
            raise ParseError("mixed tagged and untagged bags", lineno)
        try:
            if has_tag:
                a = arity[rest[0]]
                tags.append((rest[0],) + tuple(int(x) - 1 for x in rest[1 : 1 + a]))
                rest = rest[1 + a :]
            verts = [int(x) - 1 for x in rest]
        except ValueError:
            raise ParseError(f"non-integer vertex in {line!r}", lineno) from None
        if any(v < 0 or v >= header[2] for v in verts):
            raise ParseError(f"vertex out of range 1..{header[2]}", lineno)
        bags.append(tuple(sorted(verts)))
    if header is None:
        raise ParseError("missing 's pd' header")
    if header[0] != len(bags):
        raise ParseError(f"header declares {header[0]} bags, found {len(bags)}")
    if bags and header[1] != max(len(b) for b in bags):
        raise ParseError("header max bag size does not match the bags")
    if tagged:
        return SemiNicePathDecomposition(tuple(bags), tuple(tags))
    return PathDecomposition(tuple(bags))


def serialize_certificate(cert: StructuralCertificate, n: int) -> str:
    """``s cert <kind> <n>`` then ``v`` (vertex set), ``t`` (type class) and ``h`` (type edge) lines."""
    lines = [f"s cert {cert.kind} {n}"]
    if cert.kind == "type_partition":
        for cls, flag in zip(cert.classes, cert.clique_flags):
            lines.append(" ".join(["t", "clique" if flag else "indep"] + [str(v + 1) for v in cls]))
        for a, b in cert.type_edges:
            lines.append(f"h {a + 1} {b + 1}")
    else:
        lines.append(" ".join(["v"] + [str(v + 1) for v in cert.vertices]))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> tuple[StructuralCertificate, int]:
    kind = None
    n = 0
    verts: list[int] = []
    classes: list[tuple[int, ...]] = []
    flags: list[bool] = []
    hedges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith(("c", "#")):
            continue
        parts = line.split()
        try:
            if parts[0] == "s":
                if len(parts) != 4 or parts[1] != "cert":
                    raise ParseError(f"bad header {line!r}", lineno)
                kind, n = parts[2], int(parts[3])
                if kind not in ("fvs", "cluster_modulator", "type_partition"):
                    raise ParseError(f"unknown certificate kind {kind!r}", lineno)
                continue
            if kind is None:
                raise ParseError("certificate line before 's cert' header", lineno)
            if parts[0] == "v":
                verts += [int(x) - 1 for x in parts[1:]]
            elif parts[0] == "t":
                if len(parts) < 3 or parts[1] not in ("clique", "indep"):
                    raise ParseError(f"bad class line {line!r}", lineno)
                flags.append(parts[1] == "clique")
                classes.append(tuple(int(x) - 1 for x in parts[2:]))
            elif parts[0] == "h":
                if len(parts) != 3:
                    raise ParseError(f"bad type edge {line!r}", lineno)
                a, b = int(parts[1]) - 1, int(parts[2]) - 1
                hedges.append((min(a, b), max(a, b)))
            else:
                raise ParseError(f"unknown line {line!r}", lineno)
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", lineno) from None
    if kind is None:
        raise ParseError("missing 's cert' header")
    top = len(classes) if kind == "type_partition" else n
    pool = [v for c in classes for v in c] + verts + [x for e in hedges for x in e]
    if any(v < 0 for v in pool) or any(v >= n for v in verts + [v for c in classes for v in c]):
        raise ParseError(f"vertex out of range 1..{n}")
    if any(x >= top for e in hedges for x in e):
        raise ParseError("type edge refers to a missing class")
    if kind == "type_partition":
        return StructuralCertificate(kind, classes=tuple(classes), clique_flags=tuple(flags), type_edges=tuple(sorted(set(hedges)))), n
    return StructuralCertificate(kind, vertices=tuple(sorted(set(verts)))), n
