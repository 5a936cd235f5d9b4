"""Exact computational engine for the graded Lie algebra of admissible graphs."""

from .graphs import (
    LabeledGraph,
    SignedGraphClass,
    ZERO,
    GraphError,
    ResourceCapExceeded,
    canonicalize,
    enumerate_classes,
    merge_boundary,
    superpose,
    transpose,
    b0,
    b1,
    b1_power,
)
from .algebra import (
    GraphVector,
    SigmaDomainError,
    WedgeSpanError,
    antipode,
    bracket,
    compose,
    curly,
    delta_codifferential,
    delta_sum_check,
    differential,
    expand_wedge_basis,
    insert,
    project_constant,
    project_linear,
    sigma,
    vec,
)
from .mc import StarSeries, d_term, defect, hat_iteration, solve
from .kontsevich import Poly, PoissonStructure, evaluate, star, associativity_defect
from .homology import boundary_matrix, cohomology_dims, boundary_merge_check

__version__ = "0.1.0"

__all__ = [
    "LabeledGraph",
    "SignedGraphClass",
    "ZERO",
    "GraphError",
    "ResourceCapExceeded",
    "canonicalize",
    "enumerate_classes",
    "merge_boundary",
    "superpose",
    "transpose",
    "b0",
    "b1",
    "b1_power",
    "GraphVector",
    "SigmaDomainError",
    "WedgeSpanError",
    "antipode",
    "bracket",
    "compose",
    "curly",
    "delta_codifferential",
    "delta_sum_check",
    "differential",
    "expand_wedge_basis",
    "insert",
    "project_constant",
    "project_linear",
    "sigma",
    "vec",
    "StarSeries",
    "d_term",
    "defect",
    "hat_iteration",
    "solve",
    "Poly",
    "PoissonStructure",
    "evaluate",
    "star",
    "associativity_defect",
    "boundary_matrix",
    "cohomology_dims",
    "boundary_merge_check",
]
