"""Computational path-algebra toolkit for directed graphs with ω-bundles.

Core objects: finite directed graphs whose edges come in multiplicity
bundles (possibly countably infinite), the hereditary/saturated closure
machinery, vertex classifiers, largest-ideal reports, the hedgehog
construction, and a small exact-arithmetic term engine.
"""

from .classify import (
    Classification,
    b_infinity,
    classify,
    condition_K,
    condition_L,
    csp_class,
    csp_classes,
    cycles_without_exits,
    extreme_cycles,
    line_points,
    p_K,
    p_ex,
    p_ppi,
    properly_infinite,
    split_ppi,
)
from .closures import (
    BreakingSet,
    DensityResult,
    HereditarySet,
    breaking_capable,
    breaking_vertices,
    density_check,
    hs_closure,
    is_hereditary,
    is_saturated,
    restriction_graph,
    saturate_once,
)
from .errors import (
    ExpressionError,
    GraphSyntaxError,
    GraphValidationError,
    InvariantViolation,
    LpaError,
)
from .graph import (
    OMEGA,
    Condensation,
    EdgeBundle,
    Graph,
    condense,
    graph_digest,
    parse_graph,
    reachable,
    to_dot,
    to_text,
)
from .hedgehog import HedgehogGraph, build_hedgehog, hedgehog_is_finite
from .ideals import (
    CycleClass,
    GradedIdealDescriptor,
    LargestIdealsReport,
    descriptor_leq,
    ideal_descriptor,
    is_purely_infinite_ideal,
    largest_ideals_report,
    pi_decomposition,
)
from .terms import (
    AlgebraElement,
    Monomial,
    format_element,
    graded_components,
    parse_element,
    v_H_element,
)

__version__ = "0.1.0"

__all__ = [
    "OMEGA",
    "AlgebraElement",
    "BreakingSet",
    "Classification",
    "Condensation",
    "CycleClass",
    "DensityResult",
    "EdgeBundle",
    "ExpressionError",
    "GradedIdealDescriptor",
    "Graph",
    "GraphSyntaxError",
    "GraphValidationError",
    "HedgehogGraph",
    "HereditarySet",
    "InvariantViolation",
    "LargestIdealsReport",
    "LpaError",
    "Monomial",
    "b_infinity",
    "breaking_capable",
    "breaking_vertices",
    "build_hedgehog",
    "classify",
    "condense",
    "condition_K",
    "condition_L",
    "csp_class",
    "csp_classes",
    "cycles_without_exits",
    "density_check",
    "descriptor_leq",
    "extreme_cycles",
    "format_element",
    "graded_components",
    "graph_digest",
    "hedgehog_is_finite",
    "hs_closure",
    "ideal_descriptor",
    "is_hereditary",
    "is_purely_infinite_ideal",
    "is_saturated",
    "largest_ideals_report",
    "line_points",
    "p_K",
    "p_ex",
    "p_ppi",
    "parse_element",
    "parse_graph",
    "pi_decomposition",
    "properly_infinite",
    "reachable",
    "restriction_graph",
    "saturate_once",
    "split_ppi",
    "to_dot",
    "to_text",
    "v_H_element",
]
