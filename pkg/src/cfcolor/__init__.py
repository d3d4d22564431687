"""Conflict-free coloring on open and closed neighborhoods."""

from .errors import CFColorError, InvariantViolation, OracleCapExceeded, ParseError, PreconditionError
from .graph import Graph, parse_edge_list, serialize_edge_list
from .result import ColoringResult
from .verify import (
    Coloring,
    exact_chi_cn,
    exact_chi_on,
    exact_chi_on_partial,
    verify_cfcn,
    verify_cfon,
    verify_partial_cfon,
)
from .fvs import color_by_fvs
from .outerplanar import color_outerplanar
from .pathwidth import color_by_exact_pathwidth, color_by_pathwidth
from .planar import partial_cfon_outerplanar, partial_cfon_planar
from .structural import cfcn_by_dc, cfcn_by_nd, cfon_by_dc, cfon_by_nd

__all__ = [
    "CFColorError",
    "Coloring",
    "ColoringResult",
    "Graph",
    "InvariantViolation",
    "OracleCapExceeded",
    "ParseError",
    "PreconditionError",
    "cfcn_by_dc",
    "cfcn_by_nd",
    "cfon_by_dc",
    "cfon_by_nd",
    "color_by_exact_pathwidth",
    "color_by_fvs",
    "color_by_pathwidth",
    "color_outerplanar",
    "exact_chi_cn",
    "exact_chi_on",
    "exact_chi_on_partial",
    "parse_edge_list",
    "partial_cfon_outerplanar",
    "partial_cfon_planar",
    "serialize_edge_list",
    "verify_cfcn",
    "verify_cfon",
    "verify_partial_cfon",
]
