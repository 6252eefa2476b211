"""Cop-number upper bounds for H-minor-free graphs from decompositions of H,
with exact solvers used to check them on small graphs."""

from .decomp import Decomposition, evaluate_bound, optimize
from .gamesolver import cop_number, cops_win
from .graphcore import Graph, PathOrCycle, generate, parse_graph6, write_graph6
from .minor import find_minor_model, verify_model

__all__ = [
    "Decomposition", "Graph", "PathOrCycle", "cop_number", "cops_win", "evaluate_bound",
    "find_minor_model", "generate", "optimize", "parse_graph6", "verify_model", "write_graph6",
]
