"""Lifting colorings through neighborhood-diversity type partitions and
distance-to-cluster modulators, for open (CFON) and closed (CFCN) neighborhoods.

The type-partition liftings use an internal color 0 for non-representatives.
On output 0 is moved past every other color and the palette is renumbered to
``1..k``; the internal trace keeps 0.
"""

from __future__ import annotations

from math import ceil

from .decomposition import (
    check_certificate,
    clique_independent_counts,
    compute_type_partition,
    type_graph,
)
from .errors import InvariantViolation, OracleCapExceeded, PreconditionError
from .graph import Graph, StructuralCertificate, connected_components, require_colorable
from .result import ColoringResult, compact_palette
from .verify import Coloring, exact_chi_cn, exact_chi_on, verify_cfcn, verify_cfon

ND_CAP = 12


def clique_coloring(size: int) -> list[int]:
    """Open-neighborhood coloring of a clique: 1, 2, then 3 for everyone else."""
    return [1, 2][:size] + [3] * max(0, size - 2)


def _seal(g: Graph, raw: list[int], zero_top: int | None, closed: bool) -> tuple[Coloring, tuple]:
    colors = [zero_top if (c == 0 and zero_top is not None) else c for c in raw]
    cols, _ = compact_palette(colors)
    c = Coloring(cols)
    verdict = verify_cfcn(g, c) if closed else verify_cfon(g, c)
    if not verdict.valid:
        v = verdict.violations[0][0]
        raise InvariantViolation(f"lifted coloring fails at vertex {v + 1}")
    return Coloring(cols, verdict.witness), verdict.witness


def _h_witness(h: Graph, ch: tuple, closed: bool) -> list[int]:
    """For each type vertex the type vertex carrying its unique color."""
    out = []
    for i in range(h.n):
        hood = list(h.adj[i]) + ([i] if closed else [])
        counts: dict[int, int] = {}
        for j in hood:
            counts[ch[j]] = counts.get(ch[j], 0) + 1
        uniq = [j for j in hood if counts[ch[j]] == 1]
        # prefer a witness that does not make the class bad
        if closed:
            out.append(min(uniq, key=lambda j: (j == i, ch[j], j)))
        else:
            out.append(min(uniq, key=lambda j: (ch[j] == ch[i], ch[j], j)))
    return out


def _type_data(g: Graph, cert: StructuralCertificate | None):
    require_colorable(g)
    cert = cert or compute_type_partition(g)
    check_certificate(g, cert)
    h = type_graph(cert)
    if h.n > ND_CAP:
        raise OracleCapExceeded(f"type graph has {h.n} vertices, oracle cap is {ND_CAP}")
    return cert, h


# ---------------------------------------------------------------- ND, open


def cfon_by_nd(g: Graph, cert: StructuralCertificate | None = None) -> ColoringResult:
    """Open-neighborhood lifting; at most chi_ON(H) + ceil(cl/2) + 2 colors."""
    cert, h = _type_data(g, cert)
    cl, ind = clique_independent_counts(cert)
    classes = cert.classes
    log: list[str] = []
    if h.n == 1:
        raw = clique_coloring(g.n)
        coloring, _ = _seal(g, raw, None, closed=False)
        log.append("single type class: colored directly as a clique")
        return ColoringResult(
            "nd", coloring, 3, {"types": 1, "cl": cl, "ind": ind, "chi_h": None}, log, {"bad_sets": {}}
        )
    chi, hcol = exact_chi_on(h, ND_CAP)
    ch = hcol.colors
    uh = [ch[j] for j in _h_witness(h, ch, closed=False)]
    reps = [c[0] for c in classes]
    raw = [0] * g.n
    for i, r in enumerate(reps):
        raw[r] = ch[i]
    bad = {i for i, c in enumerate(classes) if len(c) > 1 and cert.clique_flags[i] and uh[i] == ch[i]}
    fixed: dict[int, str] = {}
    bad_initial = sorted(bad)
    a_colors = list(range(chi + 1, chi + ceil(cl / 2) + 1))
    s = chi + ceil(cl / 2)
    while True:
        centre = next((i for i in range(h.n) if sum(1 for j in h.adj[i] if j in bad) >= 2), None)
        if centre is None:
            break
        if not a_colors:
            raise InvariantViolation("reduction ran out of reserved colors")
        c = a_colors.pop(0)
        raw[reps[centre]] = c
        hit = sorted(j for j in h.adj[centre] if j in bad)
        for j in hit + ([centre] if centre in bad else []):
            if j not in fixed:
                fixed[j] = f"reduction via type {centre + 1} color {c}"
            bad.discard(j)
        log.append(f"reduction: type {centre + 1} recolored {c}, fixes types {[j + 1 for j in hit]}")
    for i in sorted(bad):
        if i not in bad:
            continue
        partner = [j for j in h.adj[i] if j in bad]
        if partner:
            j = partner[0]
            raw[reps[i]] = s + 1
            fixed[i] = f"paired with type {j + 1}"
            fixed[j] = f"paired with type {i + 1}"
            bad -= {i, j}
            log.append(f"case 1: types {i + 1},{j + 1} via representative of {i + 1} color {s + 1}")
        else:
            raw[reps[i]] = s + 1
            fixed[i] = "lone bad set"
            bad.discard(i)
            log.append(f"case 2: type {i + 1} representative recolored {s + 1}")
    bound = chi + ceil(cl / 2) + 2
    coloring, _ = _seal(g, raw, s + 2, closed=False)
    audit = {"bad_sets": {i + 1: fixed[i] for i in bad_initial}, "bad_initial": [i + 1 for i in bad_initial]}
    return ColoringResult(
        "nd", coloring, bound, {"types": h.n, "cl": cl, "ind": ind, "chi_h": chi}, log, audit
    )


# ---------------------------------------------------------------- ND, closed


def cfcn_by_nd(g: Graph, cert: StructuralCertificate | None = None) -> ColoringResult:
    """Closed-neighborhood lifting; at most chi_CN(H) + ceil(ind/3) + 3 colors."""
    cert, h = _type_data(g, cert)
    cl, ind = clique_independent_counts(cert)
    classes = cert.classes
    log: list[str] = []
    chi, hcol = exact_chi_cn(h, ND_CAP)
    ch = hcol.colors
    wit_self = _h_witness(h, ch, closed=True)
    reps = [c[0] for c in classes]
    raw = [0] * g.n
    for i, r in enumerate(reps):
        raw[r] = ch[i]
    bad = {
        i
        for i, c in enumerate(classes)
        if len(c) > 1 and not cert.clique_flags[i] and wit_self[i] == i
    }
    bad_initial = sorted(bad)
    fixed: dict[int, str] = {}
    rounds = ceil(ind / 3)
    s = chi + rounds
    ell = 0
    while True:
        lead = next((i for i in sorted(bad) if sum(1 for j in h.adj[i] if j in bad) >= 2), None)
        if lead is None:
            break
        ell += 1
        if ell > rounds:
            raise InvariantViolation("more lead-set iterations than the bound allows")
        members = [x for x in classes[lead] if x != reps[lead]]
        raw[members[0]] = chi + ell
        for x in members[1:]:
            raw[x] = chi + ell + 1
        hit = sorted(j for j in h.adj[lead] if j in bad)
        fixed[lead] = f"lead set of iteration {ell}"
        for j in hit:
            fixed[j] = f"neighbor of lead type {lead + 1} (iteration {ell})"
        bad -= set(hit) | {lead}
        log.append(f"iteration {ell}: lead type {lead + 1}, fixes types {[j + 1 for j in hit]}")
    for i in sorted(bad):
        if i not in bad:
            continue
        partner = [j for j in h.adj[i] if j in bad]
        if partner:
            j = partner[0]
            xi = next(x for x in classes[i] if x != reps[i])
            xj = next(x for x in classes[j] if x != reps[j])
            raw[xi], raw[xj] = s + 1, s + 2
            fixed[i] = f"paired with type {j + 1}"
            fixed[j] = f"paired with type {i + 1}"
            bad -= {i, j}
            log.append(f"case 1: types {i + 1},{j + 1} with colors {s + 1},{s + 2}")
        else:
            for x in classes[i]:
                if x != reps[i]:
                    raw[x] = s + 2
            fixed[i] = "lone bad set"
            bad.discard(i)
            log.append(f"case 2: type {i + 1} non-representatives colored {s + 2}")
    bound = chi + ceil(ind / 3) + 3
    coloring, _ = _seal(g, raw, s + 3, closed=True)
    audit = {"bad_sets": {i + 1: fixed[i] for i in bad_initial}, "bad_initial": [i + 1 for i in bad_initial]}
    return ColoringResult(
        "nd-closed", coloring, bound, {"types": h.n, "cl": cl, "ind": ind, "chi_h": chi}, log, audit
    )


# ---------------------------------------------------------------- distance to cluster


def _cluster_data(g: Graph, x):
    require_colorable(g)
    xs = sorted(set(x))
    check_certificate(g, StructuralCertificate("cluster_modulator", vertices=tuple(xs)))
    rest, old = g.without(xs)
    cliques = [[old[i] for i in comp] for comp in connected_components(rest)]
    return xs, cliques


class _Palette:
    """Color map that refuses to hand out a reserved color twice."""

    def __init__(self, n: int):
        self.C: list[int | None] = [None] * n
        self.reserved: dict[int, str] = {}
        self.at_reserve: dict[int, int] = {}

    def set(self, v: int, c: int) -> None:
        if c in self.reserved:
            raise InvariantViolation(f"reserved color {c} reused at vertex {v + 1}")
        self.C[v] = c

    def reserve(self, c: int, why: str) -> None:
        self.reserved[c] = why
        self.at_reserve[c] = sum(1 for x in self.C if x == c)

    def audit(self) -> dict:
        final = {c: sum(1 for x in self.C if x == c) for c in sorted(self.reserved)}
        return {
            "reserved": {c: self.reserved[c] for c in sorted(self.reserved)},
            "reserved_counts": final,
            "reserved_single_use": all(final[c] == self.at_reserve[c] for c in final),
        }


def cfon_by_dc(g: Graph, x) -> ColoringResult:
    """At most |X| + 3 colors given a cluster modulator X."""
    xs, cliques = _cluster_data(g, x)
    d = len(xs)
    log: list[str] = []
    if d == 0:
        coloring, _ = _seal(g, clique_coloring(g.n), None, closed=False)
        return ColoringResult("dc", coloring, 3, {"dc": 0}, ["no modulator: clique coloring"], _Palette(0).audit())
    idx = {v: i + 1 for i, v in enumerate(xs)}
    xset = set(xs)
    pal = _Palette(g.n)
    C = pal.C
    # step 1
    ys = [v for v in xs if any(w in xset for w in g.adj[v])]
    for v in ys:
        pal.set(v, idx[v])
    # step 2
    for w in sorted(c[0] for c in cliques if len(c) == 1):
        todo = [v for v in sorted(g.adj[w]) if C[v] is None]
        if todo:
            i1 = idx[todo[0]]
            pal.set(todo[0], i1)
            pal.set(w, i1)
            for v in todo[1:]:
                pal.set(v, d + 1)
            pal.reserve(i1, f"2(a) singleton {w + 1}")
            log.append(f"2(a): singleton {w + 1} with {len(todo)} uncolored neighbors, reserves {i1}")
            continue
        counts: dict[int, int] = {}
        for v in g.adj[w]:
            counts[C[v]] = counts.get(C[v], 0) + 1
        if any(k == 1 for k in counts.values()):
            pal.set(w, d + 1)
            log.append(f"2(b): singleton {w + 1} already sees a unique color")
            continue
        twins = [v for v in sorted(g.adj[w]) if C[v] == d + 1]
        if len(twins) < 2:
            raise InvariantViolation(f"singleton {w + 1}: repeated color other than {d + 1}")
        present = {C[v] for v in g.adj[w]}
        v1 = next((v for v in twins if idx[v] not in present), None)
        if v1 is None:
            raise InvariantViolation(f"singleton {w + 1}: both duplicate indices already present")
        pal.set(v1, idx[v1])
        pal.reserve(idx[v1], f"2(b) singleton {w + 1}")
        pal.set(w, d + 1)
        log.append(f"2(b): singleton {w + 1} via {v1 + 1} recolored {idx[v1]}")
    # step 3
    for v in xs:
        if C[v] is not None:
            continue
        counts = {}
        for w in g.adj[v]:
            if C[w] is not None:
                counts[C[w]] = counts.get(C[w], 0) + 1
        if any(k == 1 for k in counts.values()):
            continue
        w = next(w for w in sorted(g.adj[v]) if C[w] is None)
        pal.set(w, idx[v])
        pal.reserve(idx[v], f"step 3 for {v + 1}")
        log.append(f"step 3: {w + 1} colored {idx[v]} as witness of {v + 1}")
    # step 4
    for v in xs:
        if C[v] is None:
            pal.set(v, d + 1)
    # step 5
    for clique in cliques:
        if len(clique) < 2:
            continue
        colored = [v for v in clique if C[v] is not None]
        free = [v for v in clique if C[v] is None]
        if len(colored) == 1 and free:
            pal.set(free.pop(0), d + 2)
        elif not colored:
            pal.set(free.pop(0), d + 2)
            pal.set(free.pop(0), d + 3)
        for v in free:
            pal.set(v, d + 1)
    coloring, _ = _seal(g, [c for c in C], None, closed=False)
    return ColoringResult(
        "dc",
        coloring,
        d + 3,
        {"dc": d},
        log,
        pal.audit(),
    )


def cfcn_by_dc(g: Graph, x) -> ColoringResult:
    """Closed-neighborhood coloring with at most max(3, |X| + 1) colors."""
    xs, cliques = _cluster_data(g, x)
    d = len(xs)
    idx = {v: i + 1 for i, v in enumerate(xs)}
    xset = set(xs)
    ys = [v for v in xs if any(w in xset for w in g.adj[v])]
    yset = set(ys)
    C: list[int | None] = [None] * g.n
    log: list[str] = []
    bound = max(3, d + 1)

    hub = None
    for clique in cliques:
        for u in clique:
            if sum(1 for v in g.adj[u] if v in xset and v not in yset) >= 2:
                hub = u
                break
        if hub is not None:
            break
    if hub is not None:
        vs = sorted((v for v in g.adj[hub] if v in xset and v not in yset), key=idx.get)
        i1, i2 = idx[vs[0]], idx[vs[1]]
        C[hub] = i1
        for v in vs:
            C[v] = d + 1
        for v in xs:
            # the modulator's adjacent part is colored here as well
            if C[v] is None:
                C[v] = idx[v]
        for clique in cliques:
            has = any(C[u] is not None for u in clique)
            for u in clique:
                if C[u] is None:
                    if not has:
                        C[u] = i2
                        has = True
                    else:
                        C[u] = d + 1
        log.append(f"case 1: clique vertex {hub + 1} serves {len(vs)} modulator vertices")
    elif ys:
        vi, vj = min((v, w) for v in ys for w in g.adj[v] if w in xset and v < w)
        C[vi] = idx[vi]
        C[vj] = d + 1
        for v in xs:
            if C[v] is None:
                C[v] = idx[v]
        for clique in cliques:
            C[clique[0]] = idx[vj]
            for u in clique[1:]:
                C[u] = d + 1
        log.append(f"case 2: modulator edge {vi + 1}-{vj + 1}")
    else:
        for clique in cliques:
            C[clique[0]] = 1
            for u in clique[1:]:
                C[u] = 2
        for v in xs:
            C[v] = 3
        log.append("case 3: independent modulator, three colors")
    coloring, _ = _seal(g, list(C), None, closed=True)
    return ColoringResult("dc-closed", coloring, bound, {"dc": d}, log)
