"""Reduction of automata by eliminating redundant states.

A state is redundant when its language is a combination, allowed by the
automaton's theory, of the languages of the other states.  The pipeline:

1. grow a consistent observation table (``make_consistent``); with the empty
   word among the columns, equal rows mean equal languages, so combinations
   of languages can be decided on the finite rows;
2. pick the base states: vertices of the convex hull of the rows (convex),
   the frame of their conical hull (conic), or a greedy linear basis
   (linear);
3. express every state's row over the base rows -- the rewrite map;
4. redirect transitions: every successor ``q`` is replaced by its expansion.

The result carries the table's word list as a certificate, and
:func:`verify` re-checks the language of every original state against its
expansion in the reduced automaton.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .automaton import (
    Automaton,
    Theory,
    Word,
    format_word,
    from_document,
    parse_rational,
    parse_word,
    to_document,
)
from .frame import conical_frame, convex_extreme_points
from .linalg import (
    Matrix,
    ScaledMatrix,
    ScaledVector,
    as_fraction,
    format_fraction,
    in_span,
    simplex_feasible_nonneg,
)
from .table import Engine, build_table, make_consistent

__all__ = [
    "ReductionError",
    "RewriteMap",
    "ReductionResult",
    "VerifyReport",
    "reduce",
    "reduce_wa",
    "assemble",
    "select_base",
    "expand_row",
    "verify",
    "report_document",
    "result_from_report",
    "dumps_report",
]


class ReductionError(RuntimeError):
    """An internal invariant failed; this indicates a bug, not bad input."""


@dataclass(frozen=True)
class RewriteMap:
    """Expansion of every original state over the base states.

    ``coefficients`` is ``n x k``: row ``i`` expresses ``states[i]`` over
    ``base``.  Base states expand to themselves.
    """

    states: tuple[str, ...]
    base: tuple[str, ...]
    coefficients: Matrix

    def expansion(self, q: str) -> tuple[Fraction, ...]:
        return self.coefficients.row(self.states.index(q))

    def as_dict(self, eliminated_only: bool = True) -> dict[str, dict[str, Fraction]]:
        out = {}
        for q, row in zip(self.states, self.coefficients.rows):
            if eliminated_only and q in self.base:
                continue
            out[q] = {p: c for p, c in zip(self.base, row) if c != 0}
        return out


@dataclass(frozen=True)
class ReductionResult:
    original: Automaton
    reduced: Automaton
    rewrite: RewriteMap
    words: tuple[Word, ...]

    @property
    def base(self) -> tuple[str, ...]:
        return self.rewrite.base


# --------------------------------------------------------------------------
# base extraction and expansions


def _points(rows: Sequence[Sequence[Fraction]], width: int) -> Matrix:
    # rows of the table become the columns of the point matrix
    return Matrix.from_columns(rows, nrows=width) if rows else Matrix.zeros(width, 0)


def select_base(theory: Theory, rows: Sequence[Sequence[Fraction]], substochastic: bool = False) -> list[int]:
    """Indices of the rows kept as base, ascending."""
    theory = Theory(theory)
    rows = [tuple(r) for r in rows]
    if not rows:
        return []
    width = len(rows[0])
    if theory is Theory.CONVEX:
        if substochastic:
            # sub-convex combinations: the origin joins the hull as point 0
            ext = convex_extreme_points(_points([(Fraction(0),) * width] + rows, width))
            return [i - 1 for i in ext if i > 0]
        return convex_extreme_points(_points(rows, width))
    if theory is Theory.CONIC:
        return conical_frame(_points(rows, width))
    kept: list[int] = []
    for i, r in enumerate(rows):
        if in_span([rows[j] for j in kept], r) is None:
            kept.append(i)
    return kept


def expand_row(
    theory: Theory,
    base_rows: Sequence[Sequence[Fraction]],
    row: Sequence[Fraction],
    substochastic: bool = False,
) -> Optional[tuple[Fraction, ...]]:
    """Coefficients writing ``row`` as a legal combination of ``base_rows``, or ``None``."""
    theory = Theory(theory)
    row = tuple(as_fraction(x) for x in row)
    width = len(row)
    k = len(base_rows)
    if theory is Theory.LINEAR:
        return in_span(list(base_rows), row)
    if theory is Theory.CONIC:
        return simplex_feasible_nonneg(_points(base_rows, width), row)
    cols = [tuple(r) + (Fraction(1),) for r in base_rows]
    if substochastic:
        cols.append((Fraction(0),) * width + (Fraction(1),))
    if not cols:
        return None
    c = simplex_feasible_nonneg(Matrix.from_columns(cols), row + (Fraction(1),))
    return None if c is None else c[:k]


def assemble(
    aut: Automaton,
    base: Sequence[int],
    coefficients: Sequence[Sequence[Fraction]],
    words: Sequence[Word] = (),
) -> ReductionResult:
    """Build the reduced automaton from a base and a rewrite map.

    ``coefficients[i]`` expands ``aut.states[i]`` over the base states.
    Transitions of base states are pushed through the expansion and outputs
    are restricted to the base.
    """
    base = list(base)
    k = len(base)
    R = Matrix(coefficients, ncols=k) if coefficients else Matrix.zeros(aut.n, k)
    if R.shape != (aut.n, k):
        raise ValueError(f"rewrite matrix has shape {R.shape}, expected {(aut.n, k)}")
    delta = tuple(d.select_rows(base) @ R for d in aut.delta)
    reduced = Automaton(
        aut.theory,
        aut.alphabet,
        tuple(aut.states[i] for i in base),
        tuple(aut.out[i] for i in base),
        delta,
        substochastic=aut.substochastic,
    )
    rewrite = RewriteMap(aut.states, reduced.states, R)
    return ReductionResult(aut, reduced, rewrite, tuple(tuple(w) for w in words))


def reduce(aut: Automaton, engine: Engine = "nullspace") -> ReductionResult:
    """Eliminate every redundant state of ``aut``."""
    table = make_consistent(aut, engine)
    rows = table.matrix.rows
    base = select_base(aut.theory, rows, aut.substochastic)
    base_rows = [rows[i] for i in base]
    coeffs = []
    for i, row in enumerate(rows):
        if i in base:
            coeffs.append(tuple(Fraction(int(j == i)) for j in base))
            continue
        c = expand_row(aut.theory, base_rows, row, aut.substochastic)
        if c is None:
            raise ReductionError(
                f"state {aut.states[i]!r} has no expansion over base {[aut.states[j] for j in base]} "
                f"on E = {[format_word(w) for w in table.words]}"
            )
        coeffs.append(c)
    return assemble(aut, base, coeffs, table.words)


def reduce_wa(aut: Automaton, engine: Engine = "nullspace") -> ReductionResult:
    """Reduction of a weighted automaton over the rationals (linear) or nonnegative rationals (conic).

    A table that is consistent for arbitrary linear combinations and contains
    the empty word identifies row equality on ``E`` with equality of whole
    weighted languages, for combinations of any sign.  Span or cone
    membership of a state's language therefore reduces to span or cone
    membership of its row, which is what the base extraction decides.
    """
    if aut.theory not in (Theory.LINEAR, Theory.CONIC):
        raise ValueError(f"reduce_wa expects a linear or conic automaton, got {aut.theory.value}")
    return reduce(aut, engine)


# --------------------------------------------------------------------------
# verification


@dataclass
class VerifyReport:
    passed: bool
    max_len: int
    words_checked: int = 0
    counterexample: Optional[tuple[str, Word]] = None
    redundant: list[str] = field(default_factory=list)
    messages: list[str] = field(default_factory=list)

    def summary(self) -> str:
        if self.passed:
            return f"pass: {self.words_checked} words up to length {self.max_len}, reduced automaton has no redundant state"
        return "fail: " + "; ".join(self.messages)


def _redundant_rows(theory: Theory, rows: Sequence[Sequence[Fraction]], substochastic: bool) -> list[int]:
    found = []
    for i, r in enumerate(rows):
        others = [rows[j] for j in range(len(rows)) if j != i]
        if expand_row(theory, others, r, substochastic) is not None:
            found.append(i)
    return found


def verify(result: ReductionResult, max_len: int = 10) -> VerifyReport:
    """Exact check of a reduction.

    (a) every original state and its expansion agree on every word of length
    at most ``max_len``; (b) no state of the reduced automaton is a legal
    combination of the others on the certificate words.
    """
    orig, red = result.original, result.reduced
    R = result.rewrite.coefficients
    report = VerifyReport(True, max_len)

    # columns are walked as integer vectors over a common denominator
    Rs = ScaledMatrix(R)
    od = [ScaledMatrix(d) for d in orig.delta]
    rd = [ScaledMatrix(d) for d in red.delta]
    layer = [((), ScaledVector.of(orig.out), ScaledVector.of(red.out))]
    checked = 0
    for length in range(max_len + 1):
        for w, col, rcol in layer:
            checked += 1
            if Rs @ rcol != col:
                expected, actual = (Rs @ rcol).fractions(), col.fractions()
                i = next(i for i in range(orig.n) if expected[i] != actual[i])
                report.passed = False
                report.counterexample = (orig.states[i], w)
                report.messages.append(
                    f"state {orig.states[i]!r} on word {format_word(w)}: original "
                    f"{format_fraction(actual[i])}, reduced {format_fraction(expected[i])}"
                )
                report.words_checked = checked
                return report
        if length == max_len:
            break
        layer = [
            ((a,) + w, od[k] @ col, rd[k] @ rcol)
            for k, a in enumerate(orig.alphabet)
            for w, col, rcol in layer
        ]
    report.words_checked = checked

    words = result.words or ((),)
    table = build_table(red, words)
    redundant = _redundant_rows(red.theory, table.matrix.rows, red.substochastic)
    if redundant:
        report.passed = False
        report.redundant = [red.states[i] for i in redundant]
        report.messages.append(f"reduced automaton still has redundant states {report.redundant}")
    return report


# --------------------------------------------------------------------------
# report documents


def report_document(result: ReductionResult) -> dict:
    return {
        "base": list(result.base),
        "rewrite": {
            q: {p: format_fraction(c) for p, c in exp.items()} for q, exp in result.rewrite.as_dict().items()
        },
        "E": [format_word(w) for w in result.words],
        "reduced": to_document(result.reduced),
        "original": to_document(result.original),
    }


def result_from_report(doc: Mapping) -> ReductionResult:
    """Rebuild a :class:`ReductionResult` from a report document.

    The report must carry the ``original`` automaton.  Base states expand to
    themselves; missing coefficients are zero.
    """
    for key in ("base", "rewrite", "E", "reduced", "original"):
        if key not in doc:
            raise ValueError(f"report is missing {key!r}")
    orig = from_document(doc["original"])
    red = from_document(doc["reduced"])
    base = tuple(doc["base"])
    if tuple(red.states) != base:
        raise ValueError("reduced states do not match base")
    rows = []
    for q in orig.states:
        if q in base:
            rows.append([int(p == q) for p in base])
            continue
        exp = doc["rewrite"].get(q)
        if exp is None:
            raise ValueError(f"no rewrite entry for eliminated state {q!r}")
        for p in exp:
            if p not in base:
                raise ValueError(f"rewrite of {q!r} mentions non-base state {p!r}")
        rows.append([parse_rational(exp.get(p, "0"), f"rewrite.{q}.{p}") for p in base])
    words = tuple(parse_word(w, orig.alphabet) for w in doc["E"])
    return ReductionResult(orig, red, RewriteMap(orig.states, base, Matrix(rows, ncols=len(base))), words)


def dumps_report(result: ReductionResult) -> str:
    return json.dumps(report_document(result), indent=2, ensure_ascii=False) + "\n"
