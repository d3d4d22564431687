"""Verifiers for conflict-free colorings and exact small-instance oracles.

A coloring is a tuple indexed by vertex holding a positive color or ``None``
(unassigned). Witness maps, when present, hold for each vertex the color of
its uniquely colored neighbor.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from . import _accel
from .errors import OracleCapExceeded, ParseError, PreconditionError
from .graph import Graph

DEFAULT_CAP = 12


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int | None, ...]
    witness: tuple[int | None, ...] | None = None

    @classmethod
    def of(cls, colors: Sequence[int | None], witness: Sequence[int | None] | None = None) -> "Coloring":
        return cls(tuple(colors), None if witness is None else tuple(witness))

    @property
    def is_total(self) -> bool:
        return all(c is not None for c in self.colors)

    @property
    def colors_used(self) -> int:
        return len({c for c in self.colors if c is not None})


@dataclass
class Verdict:
    valid: bool
    violations: list[tuple[int, str]] = field(default_factory=list)
    colors_used: int = 0
    witness: tuple[int | None, ...] | None = None


def _check(g: Graph, c: Coloring, closed: bool) -> Verdict:
    if len(c.colors) != g.n:
        raise PreconditionError(f"coloring has {len(c.colors)} entries for {g.n} vertices")
    for v, col in enumerate(c.colors):
        if col is not None and (not isinstance(col, int) or col < 1):
            raise PreconditionError(f"vertex {v + 1} has non-positive color {col!r}")
    violations = []
    witness: list[int | None] = []
    for v in range(g.n):
        hood = list(g.adj[v]) + ([v] if closed else [])
        counts = Counter(c.colors[w] for w in hood if c.colors[w] is not None)
        unique = sorted(col for col, k in counts.items() if k == 1)
        if unique:
            witness.append(unique[0])
        else:
            witness.append(None)
            violations.append((v, "no uniquely colored neighbor"))
    return Verdict(not violations, violations, c.colors_used, tuple(witness) if not violations else None)


def verify_cfon(g: Graph, c: Coloring) -> Verdict:
    """Every vertex must see some color exactly once in its open neighborhood."""
    if not c.is_total:
        raise PreconditionError("partial coloring given to the total verifier")
    return _check(g, c, closed=False)


def verify_cfcn(g: Graph, c: Coloring) -> Verdict:
    if not c.is_total:
        raise PreconditionError("partial coloring given to the total verifier")
    return _check(g, c, closed=True)


def verify_partial_cfon(g: Graph, c: Coloring) -> Verdict:
    return _check(g, c, closed=False)


def verify_witness(g: Graph, c: Coloring, u: Sequence[int | None], closed: bool = False) -> Verdict:
    """Check that ``u[v]`` is carried by exactly one vertex of N(v) (N[v] if ``closed``)."""
    violations = []
    for v in range(g.n):
        hood = list(g.adj[v]) + ([v] if closed else [])
        if u[v] is None:
            violations.append((v, "no witness"))
            continue
        hits = sum(1 for w in hood if c.colors[w] == u[v])
        if hits != 1:
            violations.append((v, f"witness color {u[v]} appears {hits} times"))
    return Verdict(not violations, violations, c.colors_used, tuple(u) if not violations else None)


# ---------------------------------------------------------------- exact oracles


def oracle_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("CFON_ORACLE_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            raise PreconditionError(f"CFON_ORACLE_CAP must be an integer, got {env!r}") from None
    return DEFAULT_CAP


def _search_tables(g: Graph, closed: bool):
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    pos = [0] * g.n
    for p, v in enumerate(order):
        pos[v] = p
    nptr = [0]
    nidx: list[int] = []
    for v in range(g.n):
        nidx.extend(g.adj[v])
        nptr.append(len(nidx))
    buckets: list[list[int]] = [[] for _ in range(g.n)]
    for v in range(g.n):
        last = max((pos[w] for w in g.adj[v]), default=-1)
        if closed:
            last = max(last, pos[v])
        buckets[last].append(v)
    tptr = [0]
    tidx: list[int] = []
    for b in buckets:
        tidx.extend(b)
        tptr.append(len(tidx))
    return order, nptr, nidx, tptr, tidx


def _exact(g: Graph, cap: int | None, closed: bool, partial: bool, search=None) -> tuple[int, Coloring]:
    limit = oracle_cap(cap)
    if g.n > limit:
        raise OracleCapExceeded(f"{g.n} vertices exceeds oracle cap {limit}")
    if g.n == 0:
        return 0, Coloring(())
    if not closed and g.isolated_vertices():
        raise PreconditionError(f"isolated vertex {g.isolated_vertices()[0] + 1} has no CFON coloring")
    search = search or _accel.search
    tables = _search_tables(g, closed)
    for k in range(1, g.n + 1):
        cols, _, _ = search(g.n, *tables, k, closed, partial, -1)
        if cols is not None:
            coloring = Coloring(tuple(None if x == 0 else x for x in cols))
            verdict = _check(g, coloring, closed)
            assert verdict.valid, "oracle returned an invalid coloring"
            return k, Coloring(coloring.colors, verdict.witness)
    raise PreconditionError("no conflict-free coloring exists")


def exact_chi_on(g: Graph, cap: int | None = None) -> tuple[int, Coloring]:
    return _exact(g, cap, closed=False, partial=False)


def exact_chi_cn(g: Graph, cap: int | None = None) -> tuple[int, Coloring]:
    return _exact(g, cap, closed=True, partial=False)


def exact_chi_on_partial(g: Graph, cap: int | None = None) -> tuple[int, Coloring]:
    return _exact(g, cap, closed=False, partial=True)


# ---------------------------------------------------------------- text format


def serialize_coloring(c: Coloring) -> str:
    lines = [f"{v + 1} {'-' if col is None else col}" for v, col in enumerate(c.colors)]
    if c.witness is not None:
        lines.append("witness")
        lines += [f"{v + 1} {'-' if u is None else u}" for v, u in enumerate(c.witness)]
    return "\n".join(lines) + "\n"


def parse_coloring(text: str, n: int) -> Coloring:
    """Parse ``v c`` lines (``v -`` for unassigned), optionally followed by ``witness`` and ``v u`` lines."""
    colors: list[int | None] = [None] * n
    seen = [False] * n
    witness: list[int | None] | None = None
    target = colors
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c ") or line == "c" or line.startswith("#"):
            continue
        if line == "witness":
            witness = [None] * n
            target = witness
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'v color', got {line!r}", lineno)
        try:
            v = int(parts[0])
            val = None if parts[1] == "-" else int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", lineno) from None
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
        if val is not None and val < 1:
            raise ParseError(f"colors must be positive, got {val}", lineno)
        target[v - 1] = val
        if target is colors:
            seen[v - 1] = True
    missing = [v + 1 for v in range(n) if not seen[v]]
    if missing:
        raise ParseError(f"no entry for vertex {missing[0]}")
    return Coloring(tuple(colors), None if witness is None else tuple(witness))
