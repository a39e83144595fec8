"""Generalised 4-manifold triangulations, elementary moves and Pachner-graph search."""

__version__ = "0.1.0"

from .kernel import (Gluing, Triangulation, boundary, build, dual_graph, f_vector,
                     link, parse_table_text, skeleton, star, to_table_text, unglue,
                     reglue, validate)
from .canonical import canonical_form, is_isomorphic, parse_signature, signature
from .homology import euler_characteristic, homology
from .moves import MoveStep, collapse_edge, pachner_apply, pachner_valid, two_zero
from .families import boundary_s, cylinder_c, dsb2, family, pillow_s4
from .csum import connected_sum, puncture
from .search import SearchConfig, naive_bfs, outside_in, outside_in_simplify, verify_sequence

__all__ = [
    "Gluing", "Triangulation", "boundary", "build", "dual_graph", "f_vector", "link",
    "parse_table_text", "skeleton", "star", "to_table_text", "unglue", "reglue", "validate",
    "canonical_form", "is_isomorphic", "parse_signature", "signature",
    "euler_characteristic", "homology",
    "MoveStep", "collapse_edge", "pachner_apply", "pachner_valid", "two_zero",
    "boundary_s", "cylinder_c", "dsb2", "family", "pillow_s4",
    "connected_sum", "puncture",
    "SearchConfig", "naive_bfs", "outside_in", "outside_in_simplify", "verify_sequence",
]
