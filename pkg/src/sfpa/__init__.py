"""Fault-tree unreliability analysis via squarefree polynomial algebras."""

from .algebra import Poly, interpolate, tabulate
from .dominators import (
    DominatorInfo,
    check_idom_ordering,
    immediate_dominators,
    topo_sort,
)
from .errors import (
    AlgebraError,
    CapExceededError,
    InfeasibleConfigError,
    NoCutSetError,
    NotATreeError,
    ParseError,
    SfpaError,
    ValidationError,
)
from .galileo import parse_ft, serialize_ft
from .generator import GenConfig, generate, generate_corpus
from .solver import (
    SolveReport,
    minimal_cut_set_via_reduction,
    solve_sfpa,
    solve_sfpa2,
    solve_treelike,
    variable_budget,
)
from .tree import (
    FaultTree,
    GateKind,
    compose,
    cut_sets,
    oracle_unreliability,
    pcft_unreliability,
    structure_function,
)

__all__ = [
    "AlgebraError",
    "CapExceededError",
    "DominatorInfo",
    "FaultTree",
    "GateKind",
    "GenConfig",
    "InfeasibleConfigError",
    "NoCutSetError",
    "NotATreeError",
    "ParseError",
    "Poly",
    "SfpaError",
    "SolveReport",
    "ValidationError",
    "check_idom_ordering",
    "compose",
    "cut_sets",
    "generate",
    "generate_corpus",
    "immediate_dominators",
    "interpolate",
    "minimal_cut_set_via_reduction",
    "oracle_unreliability",
    "parse_ft",
    "pcft_unreliability",
    "serialize_ft",
    "solve_sfpa",
    "solve_sfpa2",
    "solve_treelike",
    "structure_function",
    "tabulate",
    "topo_sort",
    "variable_budget",
]

__version__ = "0.1.0"
