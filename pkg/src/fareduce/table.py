"""Observation tables, the consistency check and the table-growing loop.

The table for a word list ``E`` is the ``n x m`` matrix ``M`` with
``M[i][j] = obs(q_i, e_j)``.  A combination ``v`` of states has the extended
row ``v^T M``.  The table is consistent when, for every letter ``a``, any two
legal combinations with equal extended rows also agree on ``a E``; with the
empty word in ``E`` this makes row equality on ``E`` the same thing as
language equality.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .automaton import EPS, Automaton, Theory, Word, format_word, obs
from .linalg import LpProblem, Matrix, format_fraction, nullspace_basis, rank, simplex_maximize

__all__ = [
    "ObservationTable",
    "ConsistencyDefect",
    "word_column",
    "build_table",
    "check_consistency_lp",
    "check_consistency_nullspace",
    "check_consistency",
    "is_consistent",
    "make_consistent",
    "table_dimension",
    "format_table",
]


def word_column(aut: Automaton, w: Sequence[str]) -> tuple[Fraction, ...]:
    """``(obs(q, w))_q`` for every state at once, i.e. ``D_{w_1} ... D_{w_k} out``."""
    col = aut.out
    for a in reversed(tuple(w)):
        col = aut.delta[aut.letter_index(a)] @ col
    return col


@dataclass(frozen=True)
class ObservationTable:
    automaton: Automaton
    words: tuple[Word, ...]
    matrix: Matrix

    @property
    def n(self) -> int:
        return self.matrix.nrows

    @property
    def m(self) -> int:
        return len(self.words)

    def row(self, q: str) -> tuple[Fraction, ...]:
        return self.matrix.row(self.automaton.state_index(q))

    def extended_row(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(v) @ self.matrix

    def shifted(self, a: str) -> Matrix:
        """``D_a M``: the table for the words ``a e`` with ``e`` in ``E``."""
        return self.automaton.delta[self.automaton.letter_index(a)] @ self.matrix


@dataclass(frozen=True)
class ConsistencyDefect:
    """Two combinations equal on ``E`` that differ on ``letter + E[column]``."""

    letter: str
    column: int
    left: tuple[Fraction, ...]
    right: tuple[Fraction, ...]
    word: Word

    def validate(self, table: ObservationTable) -> bool:
        aut = table.automaton
        if table.extended_row(self.left) != table.extended_row(self.right):
            return False
        return obs(aut, self.left, self.word) != obs(aut, self.right, self.word)


def build_table(aut: Automaton, words: Sequence[Sequence[str]]) -> ObservationTable:
    words = tuple(aut.check_word(w) for w in words)
    if len(set(words)) != len(words):
        raise ValueError("duplicate words in E")
    cols = [word_column(aut, w) for w in words]
    return ObservationTable(aut, words, Matrix.from_columns(cols, nrows=aut.n) if cols else Matrix.zeros(aut.n, 0))


def _is_stochastic_theory(aut: Automaton) -> bool:
    return aut.theory is Theory.CONVEX and not aut.substochastic


def check_consistency_lp(table: ObservationTable, a: str) -> Optional[ConsistencyDefect]:
    """Consistency of ``table`` under letter ``a`` by linear programming.

    For each column ``j`` maximize ``sum_i (t_i - s_i) (D_a M)_{ij}`` over
    stochastic ``t, s`` with ``(t - s)^T M = 0``.  Returns ``None`` when every
    optimum is exactly zero, else the defect for the lowest offending column
    with the optimizer as witness.
    """
    aut = table.automaton
    if aut.theory is not Theory.CONVEX:
        raise ValueError("the LP check is for convex automata; use check_consistency_nullspace")
    n = aut.n
    M = table.matrix
    DM = table.shifted(a)
    mass = "<=" if aut.substochastic else "="
    cons = [
        ((1,) * n + (0,) * n, mass, 1),
        ((0,) * n + (1,) * n, mass, 1),
    ]
    for k in range(M.ncols):
        col = M.col(k)
        cons.append((col + tuple(-x for x in col), "=", 0))
    cons = tuple(cons)
    for j in range(DM.ncols):
        col = DM.col(j)
        res = simplex_maximize(LpProblem(col + tuple(-x for x in col), cons))
        if not res.optimal:
            raise AssertionError(f"consistency LP not optimal: {res.status}")
        if res.value > 0:
            t, s = res.point[:n], res.point[n:]
            return ConsistencyDefect(a, j, t, s, (a,) + table.words[j])
    return None


def _kernel(table: ObservationTable) -> list[tuple[Fraction, ...]]:
    rows = list(table.matrix.T.rows)
    if _is_stochastic_theory(table.automaton):
        rows.append((Fraction(1),) * table.n)
    return nullspace_basis(Matrix(rows, ncols=table.n))


def _split(aut: Automaton, d: Sequence[Fraction]) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    pos = tuple(max(x, Fraction(0)) for x in d)
    neg = tuple(max(-x, Fraction(0)) for x in d)
    if aut.theory is Theory.CONVEX:
        scale = max(sum(pos), sum(neg))
        pos = tuple(x / scale for x in pos)
        neg = tuple(x / scale for x in neg)
    return pos, neg


def check_consistency_nullspace(table: ObservationTable, a: str) -> Optional[ConsistencyDefect]:
    """Consistency of ``table`` under ``a`` via the kernel of ``M^T``.

    Any two legal combinations differ by a vector ``d`` with ``M^T d = 0``
    (and ``sum(d) = 0`` for distributions); conversely such a ``d`` splits
    into positive and negative parts that, rescaled, are legal combinations.
    So the table is consistent iff ``(D_a M)^T`` kills the whole kernel.
    """
    aut = table.automaton
    kernel = _kernel(table)
    if not kernel:
        return None
    DM = table.shifted(a)
    for j in range(DM.ncols):
        col = DM.col(j)
        for d in kernel:
            if sum((x * y for x, y in zip(d, col)), Fraction(0)) != 0:
                t, s = _split(aut, d)
                return ConsistencyDefect(a, j, t, s, (a,) + table.words[j])
    return None


Engine = Literal["nullspace", "lp"]


def check_consistency(table: ObservationTable, a: str, engine: Engine = "nullspace") -> Optional[ConsistencyDefect]:
    if engine == "lp":
        return check_consistency_lp(table, a)
    if engine == "nullspace":
        return check_consistency_nullspace(table, a)
    raise ValueError(f"unknown engine {engine!r}")


def is_consistent(table: ObservationTable, engine: Engine = "nullspace") -> bool:
    return all(check_consistency(table, a, engine) is None for a in table.automaton.alphabet)


def make_consistent(aut: Automaton, engine: Engine = "nullspace") -> ObservationTable:
    """Grow ``E`` from ``[eps]`` until the table is consistent.

    Letters are tried in alphabet order; the first defect found adds the
    single word ``a e_i``.  Every addition raises the dimension of the row
    space, so at most ``n - 1`` words are added.
    """
    if engine == "lp" and aut.theory is not Theory.CONVEX:
        engine = "nullspace"
    words = [EPS]
    table = build_table(aut, words)
    while True:
        for a in aut.alphabet:
            defect = check_consistency(table, a, engine)
            if defect is not None:
                break
        else:
            return table
        if defect.word in table.words:
            raise AssertionError(f"defect word {format_word(defect.word)} already in E")
        words.append(defect.word)
        table = build_table(aut, words)
        if len(words) > aut.n:
            raise AssertionError("table grew past the number of states")


def table_dimension(table: ObservationTable) -> int:
    """Affine dimension of the row polytope (distributions) or rank of ``M`` (otherwise)."""
    if _is_stochastic_theory(table.automaton):
        ones = Matrix([[1]] * table.n, ncols=1)
        return rank(table.matrix.hstack(ones)) - 1
    return rank(table.matrix)


def format_table(table: ObservationTable) -> str:
    """Tab-separated dump: header of words, then one row per state."""
    lines = ["\t".join([""] + [format_word(w) for w in table.words])]
    for q, row in zip(table.automaton.states, table.matrix.rows):
        lines.append("\t".join([q] + [format_fraction(x) for x in row]))
    return "\n".join(lines) + "\n"
