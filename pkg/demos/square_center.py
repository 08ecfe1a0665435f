"""Rewrite maps are not unique: the center of a square has two decompositions.

Run: python3 demos/square_center.py
"""
from fractions import Fraction

from fareduce.automaton import Automaton, Theory
from fareduce.fixtures import square_automaton
from fareduce.linalg import Matrix, simplex_feasible_nonneg
from fareduce.reducer import assemble, reduce, verify
from fareduce.table import make_consistent

square = square_automaton()
table = make_consistent(square)
print("rows:", [tuple(map(str, r)) for r in table.matrix.rows])
print("already reduced:", reduce(square).reduced == square)

# Add a fifth state in the middle.
half = Fraction(1, 2)
moves = [list(r) + [0] for r in square.delta[0].rows] + [[0, half, 0, half, 0]]
aut = Automaton(Theory.CONVEX, square.alphabet, square.states + ("q5",), square.out + (half,), (Matrix(moves),))

points = Matrix.from_columns([r + (1,) for r in table.matrix.rows])
print("simplex picks:", [str(c) for c in simplex_feasible_nonneg(points, (half, half, 1))])

words = make_consistent(aut).words
identity = [tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4)]
for name, mix in [("q1 + q3", (half, 0, half, 0)), ("q2 + q4", (0, half, 0, half))]:
    result = assemble(aut, range(4), identity + [mix], words)
    print(f"q5 = 1/2 ({name}):", verify(result, 12).summary())
