from __future__ import annotations

from dataclasses import dataclass, field

from .verify import Coloring


@dataclass
class ColoringResult:
    """What every coloring algorithm hands back to callers and the report layer."""

    method: str
    coloring: Coloring
    bound: int | None
    parameter: dict = field(default_factory=dict)
    log: list[str] = field(default_factory=list)
    audit: dict = field(default_factory=dict)
    fallback_used: bool = False

    @property
    def colors_used(self) -> int:
        return self.coloring.colors_used


def compact_palette(colors, witness=None):
    """Renumber the colors that occur to ``1..k`` preserving their order."""
    present = sorted({c for c in colors if c is not None})
    remap = {c: i + 1 for i, c in enumerate(present)}
    new_colors = tuple(None if c is None else remap[c] for c in colors)
    new_witness = None
    if witness is not None:
        new_witness = tuple(None if u is None else remap.get(u) for u in witness)
    return new_colors, new_witness
