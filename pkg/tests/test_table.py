import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fareduce.automaton import Automaton, Theory, words_up_to
from fareduce.fixtures import (
    conic_sum_automaton,
    dependent_linear_automaton,
    square_automaton,
    tetrahedron_automaton,
    three_chains_automaton,
)
from fareduce.generate import random_automaton
from fareduce.linalg import LpProblem, Matrix, nullspace_basis, simplex_maximize
from fareduce.table import (
    build_table,
    check_consistency,
    check_consistency_lp,
    check_consistency_nullspace,
    format_table,
    is_consistent,
    make_consistent,
    table_dimension,
    word_column,
)

FIXTURES = [
    tetrahedron_automaton,
    three_chains_automaton,
    square_automaton,
    dependent_linear_automaton,
    conic_sum_automaton,
]
seeds = st.integers(0, 2**32 - 1)


def _single_state():
    return Automaton(Theory.CONVEX, ("a", "b"), ("p",), (F(1, 3),), (Matrix([[1]]), Matrix([[1]])))


def test_tetrahedron_table():
    table = build_table(tetrahedron_automaton(), [(), ("a",), ("a", "a")])
    assert table.matrix.rows == (
        (F(1, 2), F(1, 2), 1),
        (F(1, 2), 1, 0),
        (1, 0, 0),
        (0, 0, 0),
        (F(1, 2), F(1, 3), 0),
    )
    assert table.row("q5") == (F(1, 2), F(1, 3), 0)


def test_empty_word_column_is_the_output_vector():
    for make in FIXTURES:
        aut = make()
        assert build_table(aut, [()]).matrix.col(0) == aut.out


def test_three_chains_table():
    table = build_table(three_chains_automaton(), [(), ("a",)])
    assert table.matrix.rows == ((0, F(1, 2)), (F(1, 2), F(1, 2)), (F(1, 2), 0), (0, 0), (1, F(1, 4)), (F(1, 4), F(1, 4)))


def test_duplicate_columns_rejected():
    with pytest.raises(ValueError):
        build_table(square_automaton(), [(), ()])


def test_tetrahedron_consistency_both_engines():
    aut = tetrahedron_automaton()
    full = build_table(aut, [(), ("a",), ("a", "a")])
    assert check_consistency_lp(full, "a") is None
    assert check_consistency_nullspace(full, "a") is None
    small = build_table(aut, [()])
    for engine in ("lp", "nullspace"):
        defect = check_consistency(small, "a", engine)
        assert defect is not None and defect.column == 0 and defect.word == ("a",)
        assert defect.validate(small)


def test_hand_witness_for_tetrahedron_defect():
    aut = tetrahedron_automaton()
    small = build_table(aut, [()])
    from fareduce.table import ConsistencyDefect

    q1, q2 = (1, 0, 0, 0, 0), (0, 1, 0, 0, 0)
    assert ConsistencyDefect("a", 0, q1, q2, ("a",)).validate(small)


def test_lp_optimum_is_zero_on_consistent_tetrahedron_table():
    aut = tetrahedron_automaton()
    table = build_table(aut, [(), ("a",), ("a", "a")])
    n, M, DM = aut.n, table.matrix, table.shifted("a")
    cons = [((1,) * n + (0,) * n, "=", 1), ((0,) * n + (1,) * n, "=", 1)]
    cons += [(c + tuple(-x for x in c), "=", 0) for c in M.columns]
    for c in DM.columns:
        res = simplex_maximize(LpProblem(c + tuple(-x for x in c), cons))
        assert res.optimal and res.value == 0


def test_single_state_is_consistent():
    aut = _single_state()
    for words in ([()], [("a",), ("b", "a")]):
        table = build_table(aut, words)
        assert is_consistent(table, "lp") and is_consistent(table, "nullspace")
    assert make_consistent(aut).words == ((),)


def test_full_rank_tables_are_consistent():
    aut = square_automaton()
    assert is_consistent(build_table(aut, [(), ("a",)]))
    lin = Automaton(Theory.LINEAR, ("a",), ("p", "q"), (1, 0), (Matrix([[F(2, 3), -5], [7, 1]]),))
    table = build_table(lin, [(), ("a",)])
    assert table.matrix == Matrix([[1, F(2, 3)], [0, 7]])
    assert is_consistent(table)


def test_lp_engine_needs_convex_theory():
    with pytest.raises(ValueError):
        check_consistency_lp(build_table(dependent_linear_automaton(), [()]), "a")


def test_make_consistent_examples():
    assert make_consistent(tetrahedron_automaton()).words == ((), ("a",), ("a", "a"))
    chains = make_consistent(three_chains_automaton())
    assert chains.words == ((), ("a",))
    assert build_table(three_chains_automaton(), [(), ("a",), ("a", "a")]).matrix.col(2) == chains.matrix.col(1)
    assert make_consistent(tetrahedron_automaton(), "lp").words == ((), ("a",), ("a", "a"))


@pytest.mark.parametrize("make", FIXTURES)
def test_one_letter_extensions_stay_consistent(make):
    aut = make()
    words = list(make_consistent(aut).words)
    extended = words + [(a,) + w for a in aut.alphabet for w in words if (a,) + w not in words]
    assert is_consistent(build_table(aut, extended))


@pytest.mark.parametrize("make", FIXTURES)
def test_equal_rows_on_consistent_table_mean_equal_languages(make):
    aut = make()
    table = make_consistent(aut)
    rows = list(table.matrix.T.rows)
    if aut.theory is Theory.CONVEX:
        rows.append((1,) * aut.n)
    kernel = nullspace_basis(Matrix(rows, ncols=aut.n))
    for w in words_up_to(aut.alphabet, 10):
        col = word_column(aut, w)
        for d in kernel:
            assert sum(x * y for x, y in zip(d, col)) == 0


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_engines_agree_and_witnesses_are_genuine(seed):
    rng = random.Random(seed)
    aut = random_automaton(rng, Theory.CONVEX, rng.randint(1, 6), rng.randint(1, 2))
    pool = list(words_up_to(aut.alphabet, 3))
    table = build_table(aut, rng.sample(pool, rng.randint(1, min(4, len(pool)))))
    for a in aut.alphabet:
        lp, ns = check_consistency_lp(table, a), check_consistency_nullspace(table, a)
        assert (lp is None) == (ns is None)
        if lp is not None:
            assert lp.column == ns.column
            assert lp.validate(table) and ns.validate(table)
            assert sum(lp.left) == sum(lp.right) == 1 == sum(ns.left) == sum(ns.right)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(Theory)), seeds)
def test_each_added_word_raises_the_dimension(theory, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    aut = random_automaton(rng, theory, n, rng.randint(1, 2), combos=rng.randint(0, n - 1))
    table = make_consistent(aut)
    assert table.words[0] == ()
    assert len(table.words) <= max(n, 1)
    assert is_consistent(table)
    dims = [table_dimension(build_table(aut, table.words[: k + 1])) for k in range(len(table.words))]
    assert dims == sorted(set(dims))


def test_substochastic_tables():
    aut = Automaton(
        Theory.CONVEX, ("a",), ("p", "q", "r"), (1, 0, F(1, 2)),
        (Matrix([[0, 0, 0], [0, 1, 0], [F(1, 2), 0, 0]]),), substochastic=True,
    )
    table = make_consistent(aut)
    assert is_consistent(table, "lp") and is_consistent(table, "nullspace")
    # r looks like half of p until the a column separates them
    assert len(table.words) == 2


def test_format_table():
    text = format_table(build_table(tetrahedron_automaton(), [(), ("a",), ("a", "a")]))
    lines = text.splitlines()
    assert lines[0] == "\teps\ta\taa"
    assert lines[5] == "q5\t1/2\t1/3\t0"
    assert "." not in text
