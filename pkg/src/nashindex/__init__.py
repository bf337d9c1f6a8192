"""Exact homological index of a 1-form on a hypersurface singularity."""

from .ring import Polynomial, RingContext, QQ
from .engine import Budget, ResourceLimitError
from .nash import HypersurfaceProblem, NonIsolatedError, ProblemError
from .homindex import IndexReport, homological_index, koszul_index_smooth
from .oracles import branch_count, classical_milnor, smooth_restriction_milnor
from .probfile import ParseError, parse_expr, parse_problem

__version__ = "0.1.0"

__all__ = [
    "Budget", "HypersurfaceProblem", "IndexReport", "NonIsolatedError",
    "ParseError", "Polynomial", "ProblemError", "QQ", "ResourceLimitError",
    "RingContext", "branch_count", "classical_milnor", "homological_index",
    "koszul_index_smooth", "parse_expr", "parse_problem",
    "smooth_restriction_milnor",
]
