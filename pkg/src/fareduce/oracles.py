"""Independent cross-checks: bounded and exact language equivalence, and a
per-state redundancy test.

Languages of combinations are compared through the columns
``c_w = D_{w_1} ... D_{w_k} out``: the weight of ``w`` from ``v`` is
``v . c_w``.  Prepending a letter ``a`` maps ``c_w`` to ``D_a c_w``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .automaton import Automaton, Theory, Word, check_state_vector, dirac
from .linalg import Matrix, ScaledMatrix, ScaledVector, dot, vector
from .reducer import ReductionError, expand_row
from .table import make_consistent

__all__ = ["EquivQuery", "EquivResult", "equiv_up_to", "equiv_exact", "redundancy_bruteforce"]


@dataclass(frozen=True)
class EquivQuery:
    """Compare the language of ``left_vector`` in ``left`` with ``right_vector`` in ``right``."""

    left: Automaton
    left_vector: tuple[Fraction, ...]
    right: Automaton
    right_vector: tuple[Fraction, ...]

    def __post_init__(self):
        if self.left.alphabet != self.right.alphabet:
            raise ValueError("automata must share the same alphabet, in the same order")
        lv, rv = vector(self.left_vector), vector(self.right_vector)
        if len(lv) != self.left.n or len(rv) != self.right.n:
            raise ValueError("state vector length does not match its automaton")
        object.__setattr__(self, "left_vector", lv)
        object.__setattr__(self, "right_vector", rv)

    @classmethod
    def of_states(cls, left: Automaton, q: str, right: Automaton, r: str) -> "EquivQuery":
        return cls(left, dirac(left, q), right, dirac(right, r))


@dataclass(frozen=True)
class EquivResult:
    equal: bool
    counterexample: Optional[Word] = None

    def __bool__(self):
        return self.equal


def equiv_up_to(query: EquivQuery, max_len: int) -> EquivResult:
    """Compare on every word of length ``<= max_len``.

    Words are scanned in length-lexicographic order, so the counterexample
    returned is the least one in that order.
    """
    L, R = query.left, query.right
    u = ScaledMatrix(Matrix([query.left_vector], ncols=L.n))
    v = ScaledMatrix(Matrix([query.right_vector], ncols=R.n))
    ld = [ScaledMatrix(d) for d in L.delta]
    rd = [ScaledMatrix(d) for d in R.delta]
    layer = [((), ScaledVector.of(L.out), ScaledVector.of(R.out))]
    for length in range(max_len + 1):
        for w, cl, cr in layer:
            if u @ cl != v @ cr:
                return EquivResult(False, w)
        if length == max_len:
            break
        layer = [
            ((a,) + w, ld[k] @ cl, rd[k] @ cr)
            for k, a in enumerate(L.alphabet)
            for w, cl, cr in layer
        ]
    return EquivResult(True)


class _Echelon:
    """Incremental row-echelon basis for span membership tests."""

    def __init__(self):
        self.rows: list[tuple[int, list[Fraction]]] = []

    def add(self, x: Sequence[Fraction]) -> bool:
        x = list(x)
        for lead, row in self.rows:
            if x[lead] != 0:
                f = x[lead] / row[lead]
                x = [a - f * b for a, b in zip(x, row)]
        lead = next((i for i, a in enumerate(x) if a != 0), None)
        if lead is None:
            return False
        self.rows.append((lead, x))
        return True


def equiv_exact(query: EquivQuery) -> EquivResult:
    """Decide language equality exactly (convex and linear theories).

    Explores the columns of the disjoint union breadth-first, extending only
    words whose column is new to the span.  The span has dimension at most
    ``n_left + n_right``, so the search stops after that many new columns,
    and the counterexample found has minimal length.
    """
    L, R = query.left, query.right
    for aut in (L, R):
        if aut.theory is Theory.CONIC:
            raise ValueError("exact equivalence is only provided for convex and linear automata")
    u = query.left_vector + tuple(-x for x in query.right_vector)
    bound = L.n + R.n
    basis = _Echelon()
    queue = [((), L.out + R.out)]
    pending = 0
    while pending < len(queue):
        w, c = queue[pending]
        pending += 1
        if dot(u, c) != 0:
            return EquivResult(False, w)
        if not basis.add(c):
            continue
        if len(basis.rows) > bound:
            raise AssertionError("forward space exceeded n_left + n_right dimensions")
        nl = L.n
        for k, a in enumerate(L.alphabet):
            queue.append(((a,) + w, (L.delta[k] @ c[:nl]) + (R.delta[k] @ c[nl:])))
    return EquivResult(True)


def redundancy_bruteforce(aut: Automaton, q: str) -> Optional[tuple[Fraction, ...]]:
    """A combination of the *other* states with the same language as ``q``, or ``None``.

    The candidate is found on a consistent table and then confirmed by an
    equivalence check against ``q`` itself.
    """
    i = aut.state_index(q)
    rows = make_consistent(aut).matrix.rows
    others = [j for j in range(aut.n) if j != i]
    c = expand_row(aut.theory, [rows[j] for j in others], rows[i], aut.substochastic)
    if c is None:
        return None
    y = [Fraction(0)] * aut.n
    for j, x in zip(others, c):
        y[j] = x
    y = tuple(y)
    if not aut.substochastic:
        check_state_vector(aut.theory, y)
    query = EquivQuery(aut, dirac(aut, q), aut, y)
    verdict = equiv_up_to(query, 2 * aut.n) if aut.theory is Theory.CONIC else equiv_exact(query)
    if not verdict:
        raise ReductionError(f"witness for {q!r} differs on word {verdict.counterexample}")
    return y
