import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fareduce.automaton import Automaton, Theory, dirac, obs, words_up_to
from fareduce.fixtures import (
    conic_sum_automaton,
    square_automaton,
    tetrahedron_automaton,
    three_chains_automaton,
)
from fareduce.generate import random_automaton, random_vector
from fareduce.linalg import Matrix
from fareduce.oracles import EquivQuery, equiv_exact, equiv_up_to, redundancy_bruteforce
from fareduce.reducer import reduce

seeds = st.integers(0, 2**32 - 1)
HALF = F(1, 2)


def test_three_chains_mixture():
    aut = three_chains_automaton()
    query = EquivQuery(aut, dirac(aut, "q6"), aut, (0, HALF, 0, HALF, 0, 0))
    assert equiv_up_to(query, 10).equal
    assert equiv_exact(query).equal


def test_vector_against_itself():
    aut = tetrahedron_automaton()
    v = (F(1, 5), 0, F(2, 5), F(2, 5), 0)
    assert equiv_up_to(EquivQuery(aut, v, aut, v), 6)
    assert equiv_exact(EquivQuery(aut, v, tetrahedron_automaton(), v))


def test_tetrahedron_states_differ_on_a():
    aut = tetrahedron_automaton()
    query = EquivQuery.of_states(aut, "q1", aut, "q2")
    assert equiv_up_to(query, 2).counterexample == ("a",)
    assert equiv_exact(query).counterexample == ("a",)


def test_queries_need_a_shared_alphabet():
    other = Automaton(Theory.CONVEX, ("b",), ("p",), (1,), (Matrix([[1]]),))
    with pytest.raises(ValueError):
        EquivQuery.of_states(tetrahedron_automaton(), "q1", other, "p")
    with pytest.raises(ValueError):
        EquivQuery(other, (1, 0), other, (1,))


def test_exact_check_refuses_conic():
    aut = conic_sum_automaton()
    with pytest.raises(ValueError):
        equiv_exact(EquivQuery.of_states(aut, "q1", aut, "q2"))


def test_redundancy_examples():
    aut = three_chains_automaton()
    y = redundancy_bruteforce(aut, "q6")
    assert y is not None and y[5] == 0 and sum(y) == 1
    assert equiv_exact(EquivQuery(aut, y, aut, (0, HALF, 0, HALF, 0, 0))).equal
    sq = square_automaton()
    assert all(redundancy_bruteforce(sq, q) is None for q in sq.states)
    one = Automaton(Theory.CONVEX, ("a",), ("p",), (HALF,), (Matrix([[1]]),))
    assert redundancy_bruteforce(one, "p") is None
    conic = conic_sum_automaton()
    assert redundancy_bruteforce(conic, "q3") == (1, 1, 0, 0)


def _random_query(rng, theory):
    letters = rng.randint(1, 2)
    left = random_automaton(rng, theory, rng.randint(1, 4), letters)
    if rng.random() < 0.5:
        right = random_automaton(rng, theory, rng.randint(1, 4), letters)
    else:
        right = reduce(left).reduced
        if right.n == 0:
            right = left
    return EquivQuery(left, random_vector(rng, theory, left.n), right, random_vector(rng, theory, right.n))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([Theory.CONVEX, Theory.LINEAR]), seeds)
def test_exact_agrees_with_bounded_and_is_minimal(theory, seed):
    rng = random.Random(seed)
    query = _random_query(rng, theory)
    exact = equiv_exact(query)
    bound = query.left.n + query.right.n
    for max_len in range(bound + 1):
        bounded = equiv_up_to(query, max_len)
        if exact.equal:
            assert bounded.equal
    assert exact.equal == equiv_up_to(query, bound).equal
    if not exact.equal:
        w = exact.counterexample
        assert len(w) < bound
        assert obs(query.left, query.left_vector, w) != obs(query.right, query.right_vector, w)
        # no shorter word separates the two sides
        for u in words_up_to(query.left.alphabet, len(w) - 1):
            assert obs(query.left, query.left_vector, u) == obs(query.right, query.right_vector, u)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(list(Theory)), seeds)
def test_no_state_of_a_reduced_automaton_is_redundant(theory, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    aut = random_automaton(rng, theory, n, rng.randint(1, 2), combos=rng.randint(0, n - 1))
    red = reduce(aut).reduced
    for q in red.states:
        assert redundancy_bruteforce(red, q) is None
