"""Quantum automorphism groups of 2-graphs given by defining triples."""
__version__ = "0.1.0"

from .analyzer import AnalysisReport, analyze, check_theta_redundant, classical_point_census
from .composition import (Theta, Triple, composable_pairs, count_thetas, enumerate_thetas, pullback,
                          skeleton_count, validate_theta)
from .equivalence import GroupReport, automorphisms, conjugate_triple, is_equivalent
from .graph import Edge, OneGraph, check_commuting, validate_graph, vertex_matrix
from .ncalgebra import membership, prove_commutativity, saturate
from .ncpoly import NCPoly
from .presentation import Presentation, canonicalize, conjugate_presentation, generate

__all__ = [
    "AnalysisReport", "analyze", "check_theta_redundant", "classical_point_census",
    "Theta", "Triple", "composable_pairs", "count_thetas", "enumerate_thetas", "pullback",
    "skeleton_count", "validate_theta", "GroupReport", "automorphisms", "conjugate_triple",
    "is_equivalent", "Edge", "OneGraph", "check_commuting", "validate_graph", "vertex_matrix",
    "membership", "prove_commutativity", "saturate", "NCPoly", "Presentation", "canonicalize",
    "conjugate_presentation", "generate",
]
