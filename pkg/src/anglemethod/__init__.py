"""Exact Naive Angle Method engine: solving, theorem discovery, pattern sweeps."""

from .angle_model import AngleModel, Constraint, ConstraintSystem, Kind, RhsValue, solve_angle
from .discovery import SearchStrategy, Theorem, canonicalize, discover, score
from .exact_linalg import SparseRow, forward_eliminate, rank, row_space_support_vector
from .graphs import CubicGraph, generate_cubic_hamiltonian, load_graph
from .patterns import check_assignment, pattern_matrix, remove_edge, sweep

__all__ = [
    "AngleModel",
    "Constraint",
    "ConstraintSystem",
    "CubicGraph",
    "Kind",
    "RhsValue",
    "SearchStrategy",
    "SparseRow",
    "Theorem",
    "canonicalize",
    "check_assignment",
    "discover",
    "forward_eliminate",
    "generate_cubic_hamiltonian",
    "load_graph",
    "pattern_matrix",
    "rank",
    "remove_edge",
    "row_space_support_vector",
    "score",
    "solve_angle",
    "sweep",
]
