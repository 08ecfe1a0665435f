"""Frames of conical hulls and extreme points of convex hulls.

Points are the *columns* of the input matrix.  :func:`conical_frame` runs the
pivoting procedure of Wets and Witzgall: bring the matrix into canonical form
by Gauss-Jordan elimination, then decide every column as either necessary
(it is not a nonnegative combination of the remaining columns) or deleted
(it is one).  A row of the tableau is a linear functional; a column whose
entry is the only negative one in some row cannot lie in the cone of the
others, and a column that is entrywise nonnegative lies in the cone of the
basic columns.  Simplex pivots move between these two certificates.

Appending a row of ones turns the cone question into the convex one, which
is how :func:`convex_extreme_points` works.

All ties (constant column, pilot row, pivot column, pivot row) go to the
lowest index, which also keeps degenerate pivoting from cycling.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from typing import Literal

from .linalg import Matrix, rref, simplex_feasible_nonneg

__all__ = ["Label", "conical_frame", "convex_extreme_points", "membership_oracle", "frame_labels"]


class Label(enum.Enum):
    UNDECIDED = "undecided"
    NECESSARY = "necessary"
    DELETED = "deleted"


def _ray_key(col: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    lead = next(abs(x) for x in col if x != 0)
    return tuple(x / lead for x in col)


class _Tableau:
    def __init__(self, points: Matrix):
        self.ncols = points.ncols
        self.labels = [Label.UNDECIDED] * self.ncols
        seen = set()
        for j, col in enumerate(points.columns):
            if all(x == 0 for x in col):
                self.labels[j] = Label.DELETED
                continue
            key = _ray_key(col)
            if key in seen:
                self.labels[j] = Label.DELETED
            else:
                seen.add(key)
        self.alive = [j for j in range(self.ncols) if self.labels[j] is not Label.DELETED]
        reduced, pivots = rref(points)
        self.rows = [list(r) for r in reduced.rows[: len(pivots)]]
        self.basis = list(pivots)
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        rows = self.rows
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [x / piv for x in rows[r]]
        pr = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], pr)]
        self.basis[r] = c
        self.pivots += 1
        if self.pivots > 10_000 + 100 * self.ncols * self.ncols:
            raise AssertionError("frame pivoting failed to terminate")

    def delete(self, c: int) -> None:
        self.labels[c] = Label.DELETED
        self.alive.remove(c)

    def decide_constant_column(self, c: int) -> None:
        """Label the nonbasic column ``c`` necessary or deleted."""
        rows = self.rows
        while True:
            p = next((i for i, row in enumerate(rows) if row[c] < 0), None)
            if p is None:
                self.delete(c)
                return
            while True:
                l = next((j for j in self.alive if j != c and rows[p][j] < 0), None)
                if l is None:
                    self.labels[c] = Label.NECESSARY
                    return
                best = None
                for i, row in enumerate(rows):
                    if row[c] >= 0 and row[l] > 0:
                        ratio = row[c] / row[l]
                        if best is None or ratio < best[0] or (ratio == best[0] and self.basis[i] < self.basis[best[1]]):
                            best = (ratio, i)
                pilot_ratio = rows[p][c] / rows[p][l]
                # pivoting on the pilot row itself is admissible when its
                # ratio is within the bound and it clears the negative entry
                r = p if best is None or pilot_ratio <= best[0] else best[1]
                self.pivot(r, l)
                if r == p or rows[p][c] >= 0:
                    break

    def run(self) -> list[Label]:
        while True:
            basic = set(self.basis)
            c = next((j for j in self.alive if j not in basic and self.labels[j] is Label.UNDECIDED), None)
            if c is not None:
                self.decide_constant_column(c)
                continue
            c = next((j for j in self.alive if j in basic and self.labels[j] is Label.UNDECIDED), None)
            if c is None:
                return self.labels
            r = self.basis.index(c)
            l = next((j for j in self.alive if j != c and self.rows[r][j] > 0), None)
            if l is None:
                self.labels[c] = Label.NECESSARY
                continue
            self.pivot(r, l)
            self.decide_constant_column(c)


def _columns_matrix(points) -> Matrix:
    return points if isinstance(points, Matrix) else Matrix(points)


def _with_ones_row(points: Matrix) -> Matrix:
    return points.vstack(Matrix([[1] * points.ncols], ncols=points.ncols))


def frame_labels(points) -> list[Label]:
    """Final label of every column after running the pivoting procedure."""
    points = _columns_matrix(points)
    if points.ncols == 0:
        return []
    return _Tableau(points).run()


def conical_frame(points) -> list[int]:
    """Indices (ascending) of the columns forming the frame of their conical hull.

    Zero columns are dropped, and of several columns on the same ray only the
    first is kept.
    """
    return [j for j, lab in enumerate(frame_labels(points)) if lab is Label.NECESSARY]


def convex_extreme_points(points) -> list[int]:
    """Indices (ascending) of the columns that are vertices of their convex hull."""
    points = _columns_matrix(points)
    return conical_frame(_with_ones_row(points))


def membership_oracle(points, idx: int, mode: Literal["conic", "convex"] = "conic") -> bool:
    """Whether column ``idx`` is a nonnegative (conic) or convex combination of the other columns."""
    points = _columns_matrix(points)
    if mode not in ("conic", "convex"):
        raise ValueError(f"unknown mode {mode!r}")
    target = points.col(idx)
    others = points.select_columns(j for j in range(points.ncols) if j != idx)
    if mode == "convex":
        if others.ncols == 0:
            return False
        others = _with_ones_row(others)
        target = target + (Fraction(1),)
    return simplex_feasible_nonneg(others, target) is not None
