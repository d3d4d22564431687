"""Line-oriented coloring reports.

A report is a sequence of ``== SECTION`` blocks holding ``key: value``
lines; the coloring and witness maps sit inside fenced blocks. Everything
except the ``timing_ms`` line is a pure function of the input, so two runs
can be compared after :func:`strip_timing`.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .graph import Graph
from .result import ColoringResult
from .verify import Coloring, verify_cfcn, verify_cfon, verify_partial_cfon, verify_witness

VARIANT_OF = {
    "nd-closed": "closed",
    "dc-closed": "closed",
    "planar-partial": "partial-open",
    "outerplanar-partial": "partial-open",
}

BOUND_BASIS = {
    "pathwidth": "floor(5(pw+1)/3)",
    "fvs": "fvs + 2",
    "fvs1": "3 (single-vertex feedback set)",
    "nd": "chi_ON(H) + ceil(cl/2) + 2",
    "nd-closed": "chi_CN(H) + ceil(ind/3) + 3",
    "dc": "dc + 3",
    "dc-closed": "max(3, dc + 1)",
    "planar-partial": "5 (exact 4-coloring of the contracted graph; planarity assumed)",
    "outerplanar-partial": "4 (proper 3-coloring of the contracted graph)",
    "outerplanar": "4 (3 for a single all-pentagon block)",
}


def verify_for(variant: str, g: Graph, c: Coloring):
    if variant == "closed":
        return verify_cfcn(g, c)
    if variant == "partial-open":
        return verify_partial_cfon(g, c)
    return verify_cfon(g, c)


@dataclass
class ColoringReport:
    method: str
    variant: str
    n: int
    m: int
    parameters: dict
    declared_bound: int | None
    bound_basis: str
    colors_used: int
    valid: bool
    fallback_used: bool
    coloring: Coloring
    violations: list = field(default_factory=list)
    witness_valid: bool | None = None
    audit: dict = field(default_factory=dict)
    log: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    timing: float = 0.0

    @property
    def within_bound(self) -> bool:
        return self.declared_bound is None or self.colors_used <= self.declared_bound


def build_report(g: Graph, result: ColoringResult, timing: float = 0.0, notes=()) -> ColoringReport:
    """Re-verify ``result`` from scratch and package it."""
    variant = VARIANT_OF.get(result.method, "open")
    verdict = verify_for(variant, g, result.coloring)
    witness_valid = None
    if result.coloring.witness is not None:
        wv = verify_witness(g, result.coloring, result.coloring.witness, closed=variant == "closed")
        witness_valid = wv.valid
    bound = result.bound
    basis = BOUND_BASIS.get(result.method, "")
    if result.fallback_used:
        basis = "6 (5-coloring fallback of the contracted graph)"
    return ColoringReport(
        method=result.method,
        variant=variant,
        n=g.n,
        m=g.m,
        parameters=dict(result.parameter),
        declared_bound=bound,
        bound_basis=basis,
        colors_used=result.coloring.colors_used,
        valid=verdict.valid and witness_valid is not False,
        fallback_used=result.fallback_used,
        coloring=result.coloring,
        violations=list(verdict.violations),
        witness_valid=witness_valid,
        audit=dict(result.audit),
        log=list(result.log),
        notes=list(notes),
        timing=timing,
    )


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(value, sort_keys=True, default=str)
    return str(value)


def _fence(entries) -> list[str]:
    return ["```"] + [f"{v + 1} {'-' if x is None else x}" for v, x in enumerate(entries)] + ["```"]


def render_report(rep: ColoringReport) -> str:
    out = ["== HEADER", "tool: cfcolor", f"method: {rep.method}", f"variant: {rep.variant}", f"n: {rep.n}", f"m: {rep.m}"]
    for note in rep.notes:
        out.append(f"note: {note}")
    out.append("== PARAMS")
    for key in sorted(rep.parameters):
        out.append(f"{key}: {_fmt(rep.parameters[key])}")
    out += [
        "== BOUND",
        f"declared_bound: {_fmt(rep.declared_bound)}",
        f"bound_basis: {rep.bound_basis}",
        f"colors_used: {rep.colors_used}",
        f"within_bound: {_fmt(rep.within_bound)}",
        f"fallback_used: {_fmt(rep.fallback_used)}",
        "== COLORING",
    ]
    out += _fence(rep.coloring.colors)
    out.append("== WITNESS")
    if rep.coloring.witness is None:
        out.append("witness: none")
    else:
        out += _fence(rep.coloring.witness)
    if rep.audit or rep.log:
        out.append("== AUDIT")
        for key in sorted(rep.audit):
            out.append(f"{key}: {_fmt(rep.audit[key])}")
        for line in rep.log:
            out.append(f"log: {line}")
    out += ["== VERDICT", f"valid: {_fmt(rep.valid)}"]
    if rep.witness_valid is not None:
        out.append(f"witness_valid: {_fmt(rep.witness_valid)}")
    out.append(f"violations: {len(rep.violations)}")
    for v, why in rep.violations:
        out.append(f"violation: {v + 1} {why}")
    out.append(f"timing_ms: {rep.timing * 1000:.3f}")
    return "\n".join(out) + "\n"


_TIMING = re.compile(r"^timing_ms: .*\n?", re.MULTILINE)


def strip_timing(text: str) -> str:
    return _TIMING.sub("", text)


def parse_report(text: str) -> dict[str, dict[str, str]]:
    """Read the ``key: value`` lines of each section back (fenced blocks are skipped)."""
    sections: dict[str, dict[str, str]] = {}
    current = None
    fenced = False
    for line in text.splitlines():
        if line == "```":
            fenced = not fenced
            continue
        if fenced:
            continue
        if line.startswith("== "):
            current = sections.setdefault(line[3:].strip(), {})
            continue
        if current is not None and ": " in line:
            key, value = line.split(": ", 1)
            if key in current:
                current[key] += "\n" + value
            else:
                current[key] = value
    return sections
