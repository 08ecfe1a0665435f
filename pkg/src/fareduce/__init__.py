"""Exact reduction of probabilistic and weighted automata.

States whose language is a convex, linear or conic combination of the other
states' languages are eliminated; every reduction comes with a rewrite map
and can be re-checked with the equivalence oracles.
"""
from .automaton import (
    EPS,
    Automaton,
    AutomatonError,
    Theory,
    dirac,
    emit,
    format_word,
    from_document,
    obs,
    parse,
    parse_word,
    to_document,
)
from .frame import conical_frame, convex_extreme_points, membership_oracle
from .linalg import Matrix, simplex_feasible_nonneg
from .oracles import EquivQuery, equiv_exact, equiv_up_to, redundancy_bruteforce
from .reducer import ReductionError, ReductionResult, reduce, reduce_wa, verify
from .table import (
    ObservationTable,
    build_table,
    check_consistency,
    check_consistency_lp,
    check_consistency_nullspace,
    make_consistent,
)

__all__ = [
    "EPS", "Automaton", "AutomatonError", "Theory", "dirac", "emit", "format_word",
    "from_document", "obs", "parse", "parse_word", "to_document",
    "conical_frame", "convex_extreme_points", "membership_oracle",
    "Matrix", "simplex_feasible_nonneg",
    "EquivQuery", "equiv_exact", "equiv_up_to", "redundancy_bruteforce",
    "ReductionError", "ReductionResult", "reduce", "reduce_wa", "verify",
    "ObservationTable", "build_table", "check_consistency", "check_consistency_lp",
    "check_consistency_nullspace", "make_consistent",
]
