"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries; floats are
rejected at the boundary so that no rounding can creep in.  The module
provides a small immutable :class:`Matrix`, Gauss-Jordan elimination, null
spaces, a linear solver and a two-phase simplex method using Bland's rule.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

__all__ = [
    "Fraction",
    "as_fraction",
    "dot",
    "vector",
    "Matrix",
    "rref",
    "rank",
    "nullspace_basis",
    "solve_linear",
    "in_span",
    "LpProblem",
    "LpStatus",
    "LpResult",
    "simplex_maximize",
    "simplex_feasible_nonneg",
    "format_fraction",
    "ScaledVector",
    "ScaledMatrix",
]


def as_fraction(x) -> Fraction:
    """Coerce ``x`` to a Fraction.  Accepts ints, Fractions and strings like ``"3/4"``."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError(f"refusing inexact float {x!r}; pass a string or Fraction")
    return Fraction(x)


def format_fraction(x: Fraction) -> str:
    """``p/q`` or ``p`` -- never a decimal."""
    x = as_fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vector(xs: Iterable) -> tuple[Fraction, ...]:
    return tuple(as_fraction(x) for x in xs)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"length mismatch {len(u)} != {len(v)}")
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


class Matrix:
    """Immutable dense matrix of Fractions, stored row-major."""

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable] = (), ncols: Optional[int] = None):
        data = tuple(vector(r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != width:
                raise ValueError(f"declared {ncols} columns but rows have {width}")
        else:
            width = ncols or 0
        object.__setattr__(self, "_rows", data)
        object.__setattr__(self, "_ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(([int(i == j) for j in range(n)] for i in range(n)), ncols=n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(([0] * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def from_columns(cls, cols: Iterable[Iterable], nrows: Optional[int] = None) -> "Matrix":
        cols = [vector(c) for c in cols]
        if not cols:
            return cls.zeros(nrows or 0, 0)
        return cls(zip(*cols), ncols=len(cols))

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    @property
    def columns(self) -> tuple[tuple[Fraction, ...], ...]:
        return tuple(self.col(j) for j in range(self._ncols))

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self._ncols, self._rows))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(format_fraction(x) for x in r) + "]" for r in self._rows)
        return f"Matrix([{body}])"

    @property
    def T(self) -> "Matrix":
        return Matrix(self.columns, ncols=self.nrows)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns
            return Matrix(([dot(r, c) for c in cols] for r in self._rows), ncols=other.ncols)
        v = vector(other)
        return tuple(dot(r, v) for r in self._rows)

    def __rmatmul__(self, other):
        # row vector times matrix
        v = vector(other)
        if len(v) != self.nrows:
            raise ValueError(f"length {len(v)} vector @ {self.shape} matrix")
        return tuple(dot(v, c) for c in self.columns)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        return Matrix((a + b for a, b in zip(self._rows, other._rows)), ncols=self.ncols + other.ncols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self._rows + other._rows, ncols=self.ncols)

    def select_rows(self, idx: Iterable[int]) -> "Matrix":
        return Matrix((self._rows[i] for i in idx), ncols=self.ncols)

    def select_columns(self, idx: Iterable[int]) -> "Matrix":
        idx = list(idx)
        return Matrix(([r[j] for j in idx] for r in self._rows), ncols=len(idx))

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]


def _as_matrix(m) -> Matrix:
    return m if isinstance(m, Matrix) else Matrix(m)


def _rref_inplace(a: list[list[Fraction]], ncols: int, stop: Optional[int] = None) -> list[int]:
    """Gauss-Jordan on a list-of-lists; pivots searched in columns ``< stop``."""
    stop = ncols if stop is None else stop
    pivots = []
    r = 0
    for c in range(stop):
        if r == len(a):
            break
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ri = a[r]
                a[i] = [x - f * y for x, y in zip(a[i], ri)]
        pivots.append(c)
        r += 1
    return pivots


def rref(m) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and the pivot columns, left to right.

    Zero rows are kept at the bottom so the result has the input's shape.
    """
    m = _as_matrix(m)
    a = m.tolist()
    pivots = _rref_inplace(a, m.ncols)
    return Matrix(a, ncols=m.ncols), pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace_basis(m) -> list[tuple[Fraction, ...]]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    m = _as_matrix(m)
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        x = [Fraction(0)] * m.ncols
        x[f] = Fraction(1)
        for row, p in enumerate(pivots):
            x[p] = -r[row, f]
        basis.append(tuple(x))
    return basis


def solve_linear(m, b) -> Optional[tuple[Fraction, ...]]:
    """Some ``x`` with ``m x = b``, or ``None``.

    Free variables are set to zero, so the answer is deterministic.
    """
    m = _as_matrix(m)
    b = vector(b)
    if len(b) != m.nrows:
        raise ValueError(f"rhs has length {len(b)}, matrix has {m.nrows} rows")
    a = [list(r) + [bi] for r, bi in zip(m.rows, b)]
    pivots = _rref_inplace(a, m.ncols + 1, stop=m.ncols)
    for row in a[len(pivots):]:
        if row[-1] != 0:
            return None
    x = [Fraction(0)] * m.ncols
    for row, p in enumerate(pivots):
        x[p] = a[row][-1]
    return tuple(x)


def in_span(vectors: Sequence[Sequence], v) -> Optional[tuple[Fraction, ...]]:
    """Coefficients expressing ``v`` over ``vectors``, or ``None``."""
    v = vector(v)
    if not vectors:
        return () if all(x == 0 for x in v) else None
    return solve_linear(Matrix.from_columns(vectors), v)


# --------------------------------------------------------------------------
# Linear programming


class LpStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    status: LpStatus
    value: Optional[Fraction] = None
    point: Optional[tuple[Fraction, ...]] = None

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


_RELATIONS = ("<=", ">=", "=")


@dataclass(frozen=True)
class LpProblem:
    """``maximize objective . x`` subject to ``constraints``.

    Each constraint is ``(coefficients, relation, bound)`` with relation one
    of ``"<="``, ``">="`` or ``"="``.  ``nonneg`` lists the variables
    constrained to be ``>= 0``; ``None`` means all of them.
    """

    objective: tuple[Fraction, ...]
    constraints: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]
    nonneg: frozenset[int] = field(default=None)

    def __post_init__(self):
        obj = vector(self.objective)
        n = len(obj)
        cons = []
        for coeffs, rel, bound in self.constraints:
            coeffs = vector(coeffs)
            if len(coeffs) != n:
                raise ValueError(f"constraint has {len(coeffs)} coefficients, objective has {n}")
            if rel == "==":
                rel = "="
            if rel not in _RELATIONS:
                raise ValueError(f"unknown relation {rel!r}")
            cons.append((coeffs, rel, as_fraction(bound)))
        nonneg = frozenset(range(n)) if self.nonneg is None else frozenset(self.nonneg)
        if any(not 0 <= j < n for j in nonneg):
            raise ValueError("nonneg index out of range")
        object.__setattr__(self, "objective", obj)
        object.__setattr__(self, "constraints", tuple(cons))
        object.__setattr__(self, "nonneg", nonneg)

    @property
    def nvars(self) -> int:
        return len(self.objective)


def _pivot(tab: list[list[Fraction]], basis: list[int], r: int, c: int) -> None:
    piv = tab[r][c]
    if piv != 1:
        tab[r] = [x / piv for x in tab[r]]
    pr = tab[r]
    for i in range(len(tab)):
        if i != r:
            f = tab[i][c]
            if f != 0:
                tab[i] = [x - f * y for x, y in zip(tab[i], pr)]
    basis[r] = c


def _simplex(tab, basis, cost, allowed) -> bool:
    """Maximize ``cost . x`` over a canonical tableau with Bland's rule.

    The last entry of every row is the right-hand side.  Returns False when
    the objective is unbounded.
    """
    while True:
        entering = None
        for j in allowed:
            if j in basis:
                continue
            red = cost[j] - sum((cost[basis[i]] * tab[i][j] for i in range(len(tab))), Fraction(0))
            if red > 0:
                entering = j
                break
        if entering is None:
            return True
        best = None
        for i, row in enumerate(tab):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, best[1], entering)


def _solve_standard(rows, rhs, kinds, ncols, objective) -> tuple[LpStatus, Optional[list[Fraction]]]:
    """Two-phase simplex on ``rows x (kind) rhs, x >= 0`` with ``rhs >= 0``."""
    tab = []
    basis = []
    ext = ncols
    extra = []  # (row, column, coefficient)
    artificial = []
    for i, kind in enumerate(kinds):
        if kind == "<=":
            extra.append((i, ext, Fraction(1)))
            basis.append(ext)
            ext += 1
        elif kind == ">=":
            extra.append((i, ext, Fraction(-1)))
            ext += 1
            extra.append((i, ext, Fraction(1)))
            artificial.append(ext)
            basis.append(ext)
            ext += 1
        else:
            extra.append((i, ext, Fraction(1)))
            artificial.append(ext)
            basis.append(ext)
            ext += 1
    for i, row in enumerate(rows):
        tab.append(list(row) + [Fraction(0)] * (ext - ncols) + [rhs[i]])
    for i, j, v in extra:
        tab[i][j] = v

    art = set(artificial)
    if artificial:
        cost1 = [Fraction(-1) if j in art else Fraction(0) for j in range(ext)]
        _simplex(tab, basis, cost1, range(ext))
        infeas = sum((tab[i][-1] for i, b in enumerate(basis) if b in art), Fraction(0))
        if infeas > 0:
            return LpStatus.INFEASIBLE, None
        # drive remaining (zero-level) artificials out of the basis
        i = 0
        while i < len(tab):
            if basis[i] in art:
                j = next((j for j in range(ext) if j not in art and tab[i][j] != 0), None)
                if j is None:
                    del tab[i]
                    del basis[i]
                    continue
                _pivot(tab, basis, i, j)
            i += 1
    cost2 = list(objective) + [Fraction(0)] * (ext - ncols)
    allowed = [j for j in range(ext) if j not in art]
    if not _simplex(tab, basis, cost2, allowed):
        return LpStatus.UNBOUNDED, None
    x = [Fraction(0)] * ext
    for i, b in enumerate(basis):
        x[b] = tab[i][-1]
    return LpStatus.OPTIMAL, x[:ncols]


def simplex_maximize(p: LpProblem) -> LpResult:
    """Exact optimum of ``p``; infeasibility and unboundedness are results, not errors."""
    n = p.nvars
    # free variables are split into a positive and a negative part
    split = {}
    ncols = 0
    for j in range(n):
        split[j] = (ncols, None if j in p.nonneg else ncols + 1)
        ncols += 1 if j in p.nonneg else 2

    def expand(coeffs):
        out = [Fraction(0)] * ncols
        for j, c in enumerate(coeffs):
            pos, neg = split[j]
            out[pos] = c
            if neg is not None:
                out[neg] = -c
        return out

    rows, rhs, kinds = [], [], []
    for coeffs, rel, bound in p.constraints:
        row = expand(coeffs)
        if bound < 0:
            row = [-x for x in row]
            bound = -bound
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        rows.append(row)
        rhs.append(bound)
        kinds.append(rel)
    status, x = _solve_standard(rows, rhs, kinds, ncols, expand(p.objective))
    if status is not LpStatus.OPTIMAL:
        return LpResult(status)
    point = []
    for j in range(n):
        pos, neg = split[j]
        point.append(x[pos] - (x[neg] if neg is not None else 0))
    point = tuple(point)
    return LpResult(LpStatus.OPTIMAL, dot(p.objective, point), point)


def simplex_feasible_nonneg(m, b) -> Optional[tuple[Fraction, ...]]:
    """A vector ``c >= 0`` with ``m c = b``, or ``None`` if there is none."""
    m = _as_matrix(m)
    b = vector(b)
    if len(b) != m.nrows:
        raise ValueError(f"rhs has length {len(b)}, matrix has {m.nrows} rows")
    if m.ncols == 0:
        return () if all(x == 0 for x in b) else None
    cons = tuple((r, "=", bi) for r, bi in zip(m.rows, b))
    res = simplex_maximize(LpProblem((0,) * m.ncols, cons))
    return res.point if res.optimal else None


# --------------------------------------------------------------------------
# integer-scaled vectors for long word walks


class ScaledVector:
    """A rational vector stored as integer numerators over one positive denominator.

    The representation is kept in lowest terms, so two equal vectors have
    equal ``nums`` and ``den``.  Repeated products with the same few
    matrices are much cheaper this way than entry-by-entry Fractions.
    """

    __slots__ = ("nums", "den")

    def __init__(self, nums: Sequence[int], den: int = 1):
        g = den
        for x in nums:
            g = gcd(g, x)
            if g == 1:
                break
        if den < 0:
            g = -g
        self.nums = tuple(x // g for x in nums) if g != 1 else tuple(nums)
        self.den = den // g

    @classmethod
    def of(cls, xs: Iterable) -> "ScaledVector":
        xs = vector(xs)
        den = lcm(*(x.denominator for x in xs)) if xs else 1
        return cls([x.numerator * (den // x.denominator) for x in xs], den)

    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.nums)

    def __eq__(self, other):
        if not isinstance(other, ScaledVector):
            return NotImplemented
        return self.den == other.den and self.nums == other.nums

    def __hash__(self):
        return hash((self.nums, self.den))

    def __repr__(self):
        return f"ScaledVector({list(self.fractions())!r})"


class ScaledMatrix:
    """Integer form ``rows / den`` of a rational matrix, for products with :class:`ScaledVector`."""

    __slots__ = ("rows", "den", "ncols")

    def __init__(self, m):
        m = _as_matrix(m)
        den = lcm(*(x.denominator for r in m.rows for x in r)) if m.nrows and m.ncols else 1
        self.rows = [[x.numerator * (den // x.denominator) for x in r] for r in m.rows]
        self.den = den
        self.ncols = m.ncols

    def __matmul__(self, v: ScaledVector) -> ScaledVector:
        nums = v.nums
        return ScaledVector([sum(a * b for a, b in zip(r, nums)) for r in self.rows], self.den * v.den)
