"""
Fundamental groups of spaces assembled from pieces.

The package computes finite presentations of fundamental groups via the
Seifert-Van Kampen theorem, including the version for intersections with
several arcwise-connected components, and its iteration over a graph of
pieces.  Results can be checked with Smith normal form abelianization and
Todd-Coxeter coset enumeration.
"""

from .combspace import (
    CombinatorialSpace, Diagnostic, IntersectionEdge, InvalidSpaceError, Piece, ValidationReport,
    expected_stable_letters, is_admissible_order, peel_order, pi1_atlas, pi1_combinatorial,
    pi1_shortcut_simply_connected, validate,
)
from .dsl import Document, DslError, SourceSpan, build_tasks, parse, print_document
from .errors import (
    ConfigurationError, DisconnectedGraphError, MalformedInputError, PreconditionError,
    VanKampenError,
)
from .svk import (
    TREE, IntersectionComponent, RelatorSource, SvkResult, attach_graph, attach_spaces,
    classical_svk, generalized_svk,
)
from .topograph import (
    Edge, EdgeIndexedGraph, MultiGraph, PathStep, SpanningTree, bouquet, cycle_rank,
    edge_induced_graph, graph_from_json, graph_pi1, graph_to_json, is_connected, loop_word,
    spanning_tree, star, tree_path,
)
from .verify import (
    DEFAULT_COSET_CAP, CosetTable, MapCheckReport, SNFResult, abelianization,
    check_map_abelianized, in_row_span, smith_normal_form, todd_coxeter,
)
from .words import (
    EPSILON, TRIVIAL_GROUP, AbelianInvariants, GeneratorSym, GroupMap, Letter, Presentation,
    Word, apply_map, canonical_relator, concat, cyclic_reduce, disjointize, exponent_matrix,
    free_group, free_product, free_reduce, fresh_symbol, invert, parse_presentation,
    parse_word, quotient_by, rename, tietze_simplify,
)

__all__ = [
    "CombinatorialSpace", "Diagnostic", "IntersectionEdge", "InvalidSpaceError", "Piece",
    "ValidationReport", "expected_stable_letters", "is_admissible_order", "peel_order",
    "pi1_atlas", "pi1_combinatorial", "pi1_shortcut_simply_connected", "validate", "Document",
    "DslError", "SourceSpan", "build_tasks", "parse", "print_document", "ConfigurationError",
    "DisconnectedGraphError", "MalformedInputError", "PreconditionError", "VanKampenError", "TREE",
    "IntersectionComponent", "RelatorSource", "SvkResult", "attach_graph", "attach_spaces",
    "classical_svk", "generalized_svk", "Edge", "EdgeIndexedGraph", "MultiGraph", "PathStep",
    "SpanningTree", "bouquet", "cycle_rank", "edge_induced_graph", "graph_from_json", "graph_pi1",
    "graph_to_json", "is_connected", "loop_word", "spanning_tree", "star", "tree_path",
    "DEFAULT_COSET_CAP", "CosetTable", "MapCheckReport", "SNFResult", "abelianization",
    "check_map_abelianized", "in_row_span", "smith_normal_form", "todd_coxeter", "EPSILON",
    "TRIVIAL_GROUP", "AbelianInvariants", "GeneratorSym", "GroupMap", "Letter", "Presentation",
    "Word", "apply_map", "canonical_relator", "concat", "cyclic_reduce", "disjointize",
    "exponent_matrix", "free_group", "free_product", "free_reduce", "fresh_symbol", "invert",
    "parse_presentation", "parse_word", "quotient_by", "rename", "tietze_simplify",
]

__version__ = "0.1.0"
