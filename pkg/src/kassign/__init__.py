"""Exact k-cardinality assignments in max-plus algebra.

For an ``n x n`` weight matrix the package computes the optimal weight of a
matching of every cardinality ``k = 0..n``, the full characteristic
maxpolynomial and its roots (the max-plus singular values).  Four solvers are
available and cross-check each other: an exhaustive oracle, successive
longest augmenting paths, a parametric longest-path-tree method that finds
the essential assignments, and a completion step that derives the remaining
ones from them.
"""
from .completion import NotAdjacent, PathDecomposition, complete_sequence, decompose, fill_in
from .estimator import KAssignment, solve
from .gk import GKResult, SingularValue
from .gk import run as gk_run
from .instance import InstanceSpec, ParseError, generate, normalize, parse, serialize
from .maxplus import (
    NEG_INF,
    POS_INF,
    MaxPolynomial,
    TermClass,
    canonicalize,
    classify_term,
    evaluate,
    format_polynomial,
    is_fcf,
    maxperm,
    roots,
    term_classes,
)
from .oracle import brute_force_fullchar, brute_force_k, brute_force_omegas
from .ssp import AssignmentSequence, solve_sequence

__version__ = "0.1.0"

__all__ = [
    "AssignmentSequence",
    "GKResult",
    "InstanceSpec",
    "KAssignment",
    "MaxPolynomial",
    "NEG_INF",
    "NotAdjacent",
    "POS_INF",
    "ParseError",
    "PathDecomposition",
    "SingularValue",
    "TermClass",
    "brute_force_fullchar",
    "brute_force_k",
    "brute_force_omegas",
    "canonicalize",
    "classify_term",
    "complete_sequence",
    "decompose",
    "evaluate",
    "fill_in",
    "format_polynomial",
    "generate",
    "gk_run",
    "is_fcf",
    "maxperm",
    "normalize",
    "parse",
    "roots",
    "serialize",
    "solve",
    "solve_sequence",
    "term_classes",
]
