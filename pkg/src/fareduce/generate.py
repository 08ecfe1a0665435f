"""Random automata and point sets with small denominators, for tests and demos."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional

from .automaton import Automaton, Theory
from .linalg import Matrix


def _stochastic(rng: random.Random, n: int, max_den: int) -> list[Fraction]:
    d = rng.randint(1, max_den)
    row = [0] * n
    for _ in range(d):
        row[rng.randrange(n)] += 1
    return [Fraction(k, d) for k in row]


def _entry(rng: random.Random, theory: Theory, max_den: int, density: float) -> Fraction:
    if rng.random() > density:
        return Fraction(0)
    d = rng.randint(1, max_den)
    lo = 0 if theory is Theory.CONIC else -max_den
    return Fraction(rng.randint(lo, max_den), d)


def _coefficients(rng: random.Random, theory: Theory, k: int, max_den: int) -> list[Fraction]:
    if theory is Theory.CONVEX:
        return _stochastic(rng, k, max_den)
    lo = 0 if theory is Theory.CONIC else -2
    return [Fraction(rng.randint(lo, 2), rng.randint(1, 3)) for _ in range(k)]


def random_automaton(
    rng: random.Random,
    theory: Theory,
    n: int,
    letters: int = 1,
    max_den: int = 6,
    combos: int = 0,
    density: float = 0.6,
) -> Automaton:
    """An ``n``-state automaton whose entries have denominators at most ``max_den``.

    ``combos`` of the states (at random positions) are built as combinations
    of the others, so they are redundant by construction; their entries can
    have larger denominators.
    """
    theory = Theory(theory)
    if not 0 <= combos < n:
        raise ValueError("need 0 <= combos < n")
    alphabet = tuple("abcdefgh"[:letters])
    free = n - combos
    outs: list[Fraction] = []
    rows: list[list[list[Fraction]]] = [[] for _ in alphabet]
    for _ in range(free):
        if theory is Theory.CONVEX:
            outs.append(Fraction(rng.randint(0, max_den), max_den) if rng.random() < 0.5
                        else Fraction(rng.randint(0, 1)))
        else:
            outs.append(_entry(rng, theory, max_den, 0.8))
        for k in range(len(alphabet)):
            if theory is Theory.CONVEX:
                rows[k].append(_stochastic(rng, n, max_den))
            else:
                rows[k].append([_entry(rng, theory, max_den, density) for _ in range(n)])
    for _ in range(combos):
        have = len(outs)
        lam = _coefficients(rng, theory, have, max_den)
        outs.append(sum((c * o for c, o in zip(lam, outs)), Fraction(0)))
        for k in range(len(alphabet)):
            rows[k].append([sum((c * r[j] for c, r in zip(lam, rows[k])), Fraction(0)) for j in range(n)])
    # shuffle so the combination states are not always last
    perm = list(range(n))
    rng.shuffle(perm)
    states = tuple(f"q{i + 1}" for i in range(n))
    out = tuple(outs[perm[i]] for i in range(n))
    delta = tuple(
        Matrix([[rows[k][perm[i]][perm[j]] for j in range(n)] for i in range(n)], ncols=n)
        for k in range(len(alphabet))
    )
    return Automaton(theory, alphabet, states, out, delta)


def random_vector(rng: random.Random, theory: Theory, n: int, max_den: int = 6) -> tuple[Fraction, ...]:
    """A state vector legal for ``theory``."""
    theory = Theory(theory)
    if theory is Theory.CONVEX:
        return tuple(_stochastic(rng, n, max_den))
    return tuple(_entry(rng, theory, max_den, 0.7) for _ in range(n))


def random_points(
    rng: random.Random,
    dim: int,
    count: int,
    max_den: int = 6,
    nonneg: bool = False,
    distinct_rays: Optional[bool] = None,
) -> Matrix:
    """``count`` random points of dimension ``dim``, as the columns of a matrix.

    With ``distinct_rays`` no two columns lie on the same ray from the origin
    and none is zero; otherwise the points are merely distinct.
    """
    seen = set()
    cols = []
    lo = 0 if nonneg else -max_den
    attempts = 0
    while len(cols) < count:
        attempts += 1
        if attempts > 10_000:
            raise ValueError("could not draw enough distinct points")
        p = tuple(Fraction(rng.randint(lo, max_den), rng.randint(1, max_den)) for _ in range(dim))
        if distinct_rays:
            if all(x == 0 for x in p):
                continue
            lead = next(abs(x) for x in p if x != 0)
            key = tuple(x / lead for x in p)
        else:
            key = p
        if key in seen:
            continue
        seen.add(key)
        cols.append(p)
    return Matrix.from_columns(cols, nrows=dim)
