"""Automata and point sets used throughout the docs, demos and tests."""
from __future__ import annotations

from .automaton import Automaton, from_document
from .linalg import Matrix


def tetrahedron_automaton() -> Automaton:
    """Five-state chain whose extra state ``q5`` mixes ``q2, q3, q4`` equally in language.

    Its consistent table needs the columns ``eps, a, aa``; the rows of
    ``q1..q4`` are the vertices of a tetrahedron and ``q5`` sits inside.
    """
    return from_document({
        "theory": "convex",
        "alphabet": ["a"],
        "states": ["q1", "q2", "q3", "q4", "q5"],
        "out": {"q1": "1/2", "q2": "1/2", "q3": "1", "q4": "0", "q5": "1/2"},
        "delta": {"a": {
            "q1": {"q2": "1"},
            "q2": {"q3": "1"},
            "q3": {"q4": "1"},
            "q4": {"q4": "1"},
            "q5": {"q3": "1/3", "q4": "2/3"},
        }},
    })


def three_chains_automaton() -> Automaton:
    """Six states in three two-state chains; ``q6`` behaves like ``q2`` and ``q4`` mixed half and half."""
    return from_document({
        "theory": "convex",
        "alphabet": ["a"],
        "states": ["q1", "q2", "q3", "q4", "q5", "q6"],
        "out": {"q1": "0", "q2": "1/2", "q3": "1/2", "q4": "0", "q5": "1", "q6": "1/4"},
        "delta": {"a": {
            "q1": {"q2": "1"},
            "q2": {"q2": "1"},
            "q3": {"q4": "1"},
            "q4": {"q4": "1"},
            "q5": {"q6": "1"},
            "q6": {"q6": "1"},
        }},
    })


def square_automaton() -> Automaton:
    """Four states whose rows on ``eps, a`` are the corners of the unit square; already reduced."""
    return from_document({
        "theory": "convex",
        "alphabet": ["a"],
        "states": ["q1", "q2", "q3", "q4"],
        "out": {"q1": "0", "q2": "1", "q3": "1", "q4": "0"},
        "delta": {"a": {
            "q1": {"q2": "1"},
            "q2": {"q2": "1"},
            "q3": {"q4": "1"},
            "q4": {"q4": "1"},
        }},
    })


def dependent_linear_automaton() -> Automaton:
    """Weighted automaton over the rationals with ``L(q3) = 2 L(q1) - L(q2)``."""
    return from_document({
        "theory": "linear",
        "alphabet": ["a", "b"],
        "states": ["q1", "q2", "q3"],
        "out": {"q1": "1", "q2": "-1/2", "q3": "5/2"},
        "delta": {
            "a": {"q1": {"q1": "1/2", "q2": "1"}, "q2": {"q2": "2"}, "q3": {"q1": "1", "q2": "0"}},
            "b": {"q1": {"q2": "-1"}, "q2": {"q1": "1/3", "q2": "1"}, "q3": {"q1": "-1/3", "q2": "-3"}},
        },
    })


def conic_sum_automaton() -> Automaton:
    """Nonnegative weighted automaton with ``L(q3) = L(q1) + L(q2)`` and rows (1,0), (0,1), (1,1) on ``eps, a``."""
    return from_document({
        "theory": "conic",
        "alphabet": ["a"],
        "states": ["q1", "q2", "q3", "q4"],
        "out": {"q1": "1", "q2": "0", "q3": "1", "q4": "0"},
        "delta": {"a": {
            "q1": {"q4": "1"},
            "q2": {"q1": "1"},
            "q3": {"q1": "1", "q4": "1"},
            "q4": {"q4": "1"},
        }},
    })


def hull_points() -> Matrix:
    """Six points of the plane as columns; four are vertices of their hull."""
    return Matrix.from_columns([(2, 2), (4, 2), (2, 4), (4, 4), (3, 3), (4, 3)])
