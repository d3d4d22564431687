"""Conflict-free coloring from a semi-nice path decomposition.

The sweep visits bags left to right. Forget bags need nothing. An introduced
vertex ``v`` gets its color ``C(v)`` from the free colors of the previous bag
when possible (colors that some bag vertex relies on as its unique color but
that no bag vertex carries), and its witness ``U(v)`` from a neighbor in the
previous bag, preferring neighbors whose own witness color is still free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil

from .decomposition import (
    SemiNicePathDecomposition,
    check_semi_nice,
    make_nice,
    make_semi_nice,
    pathwidth_exact_small,
)
from .errors import InvariantViolation, PreconditionError
from .graph import Graph, require_colorable
from .result import ColoringResult
from .verify import Coloring, verify_partial_cfon


@dataclass
class SweepState:
    C: dict[int, int] = field(default_factory=dict)
    U: dict[int, int] = field(default_factory=dict)
    bag: set[int] = field(default_factory=set)
    fresh_count: int = 0

    @property
    def colors_used(self) -> int:
        return max(self.C.values(), default=0)


def free_colors(bag, state: SweepState) -> tuple[set[int], set[int]]:
    """Split the free colors of ``bag`` into those with one witness owner and those with several."""
    for x in bag:
        if x not in state.C:
            raise PreconditionError(f"vertex {x + 1} in bag is uncolored")
    carried = {state.C[x] for x in bag}
    owners: dict[int, int] = {}
    for x in bag:
        owners[state.U[x]] = owners.get(state.U[x], 0) + 1
    f1 = {c for c, k in owners.items() if c not in carried and k == 1}
    fmany = {c for c, k in owners.items() if c not in carried and k > 1}
    return f1, fmany


def _rule1(prev_bag, blocked: set[int], state: SweepState, taken: set[int]) -> int:
    """Rule 1: prefer a singly-owned free color, then a multiply-owned one, then a fresh color."""
    f1, fmany = free_colors(prev_bag, state)
    f1 -= blocked | taken
    fmany -= blocked | taken
    if f1:
        owner = {state.U[x]: x for x in prev_bag}

        def clash(c):
            target = state.C[owner[c]]
            return sum(1 for x in prev_bag if state.U[x] == target)

        return min(sorted(f1), key=clash)
    if fmany:
        return min(fmany)
    used = {state.C[x] for x in prev_bag} | {state.U[x] for x in prev_bag} | taken
    c = 1
    while c in used:
        c += 1
    state.fresh_count += 1
    return c


def assign_intro_one(g: Graph, v: int, prev_bag, state: SweepState) -> None:
    nbrs = sorted(g.nbr_set(v) & set(prev_bag))
    if not nbrs:
        raise PreconditionError(f"introduced vertex {v + 1} has no neighbor in the previous bag")
    blocked = {state.U[x] for x in nbrs}
    c = _rule1(prev_bag, blocked, state, set())
    f1, fmany = free_colors(prev_bag, state)
    free = f1 | fmany
    needy = [y for y in nbrs if state.U[y] in free]
    if needy:
        y = min(needy, key=lambda y: (sum(1 for x in prev_bag if state.U[x] == state.U[y]), y))
    else:
        y = nbrs[0]
    state.C[v] = c
    state.U[v] = state.C[y]


def assign_intro_special(g: Graph, v: int, v_hat: int, prev_bag, state: SweepState) -> None:
    if v == v_hat:
        raise PreconditionError("special bag needs two distinct vertices")
    prev = set(prev_bag)
    if not g.has_edge(v, v_hat) or g.nbr_set(v) & prev or g.nbr_set(v_hat) & prev:
        raise PreconditionError(f"vertices {v + 1},{v_hat + 1} are not a mutually pendant pair")
    cv = _rule1(prev_bag, set(), state, set())
    ch = _rule1(prev_bag, set(), state, {cv})
    state.C[v], state.C[v_hat] = cv, ch
    state.U[v], state.U[v_hat] = ch, cv


def max_expensive_subset(pairs) -> int:
    """Largest number of (C, U) pairs whose 2k values are pairwise distinct."""
    pairs = list(pairs)
    if len(pairs) > 20:
        raise PreconditionError("expensive-subset search limited to 20 vertices")
    best = 0

    def grow(i, used, size):
        nonlocal best
        if size + (len(pairs) - i) <= best:
            return
        if i == len(pairs):
            best = max(best, size)
            return
        c, u = pairs[i]
        if c != u and c not in used and u not in used:
            grow(i + 1, used | {c, u}, size + 1)
        grow(i + 1, used, size)

    grow(0, frozenset(), 0)
    return best


def pathwidth_bound(width: int) -> int:
    return (5 * (width + 1)) // 3


def color_by_pathwidth(g: Graph, snd: SemiNicePathDecomposition, check: bool = False) -> ColoringResult:
    """Sweep ``snd`` and return a coloring with witness map.

    With ``check`` the bag-injectivity and prefix-validity invariants are
    asserted after every bag (quadratic, meant for tests).
    """
    require_colorable(g)
    problems = check_semi_nice(g, snd)
    if problems:
        raise PreconditionError("invalid semi-nice decomposition: " + "; ".join(problems))
    state = SweepState()
    prev: set[int] = set()
    k_star = 0
    seen: set[int] = set()
    for bag, tag in zip(snd.bags, snd.tags):
        if tag[0] == "I":
            assign_intro_one(g, tag[1], sorted(prev), state)
        elif tag[0] == "S":
            assign_intro_special(g, tag[1], tag[2], sorted(prev), state)
        state.bag = set(bag)
        seen |= state.bag
        if len(bag) <= 20:
            k_star = max(k_star, max_expensive_subset([(state.C[x], state.U[x]) for x in sorted(bag)]))
        if check:
            _check_step(g, state, seen)
        prev = set(bag)
    colors = tuple(state.C[v] for v in range(g.n))
    witness = tuple(state.U[v] for v in range(g.n))
    max_bag = max(len(b) for b in snd.bags)
    audit = {
        "k_star": k_star,
        "max_bag": max_bag,
        "required_bag": ceil(3 * k_star / 2),
        "expensive_ok": max_bag >= ceil(3 * k_star / 2),
        "fresh_colors": state.fresh_count,
    }
    return ColoringResult(
        method="pathwidth",
        coloring=Coloring(colors, witness),
        bound=pathwidth_bound(snd.width),
        parameter={"width": snd.width},
        audit=audit,
    )


def _check_step(g: Graph, state: SweepState, seen: set[int]) -> None:
    cols = [state.C[x] for x in state.bag]
    if len(set(cols)) != len(cols):
        raise InvariantViolation("two vertices of one bag share a color")
    sub, old = g.induced(sorted(seen))
    verdict = verify_partial_cfon(sub, Coloring(tuple(state.C[v] for v in old)))
    if not verdict.valid:
        raise InvariantViolation(f"colored prefix is not conflict-free at vertex {old[verdict.violations[0][0]] + 1}")
    for v in seen:
        hits = [w for w in g.adj[v] if w in seen and state.C[w] == state.U[v]]
        if len(hits) != 1:
            raise InvariantViolation(f"witness of vertex {v + 1} not unique")


def color_by_exact_pathwidth(g: Graph, n_cap: int = 12, check: bool = False) -> ColoringResult:
    """Optimal decomposition, nice form, fix-up, sweep."""
    require_colorable(g)
    pd = pathwidth_exact_small(g, n_cap)
    snd = make_semi_nice(g, make_nice(pd, g))
    return color_by_pathwidth(g, snd, check)
