import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fareduce.automaton import (
    EPS,
    Automaton,
    MalformedDocument,
    MalformedRational,
    NegativeWeight,
    StochasticViolation,
    Theory,
    UnknownReference,
    dirac,
    emit,
    format_word,
    from_document,
    obs,
    parse,
    parse_word,
    step,
    to_document,
    transition_matrix,
    words_up_to,
)
from fareduce.fixtures import square_automaton, tetrahedron_automaton, three_chains_automaton
from fareduce.generate import random_automaton, random_vector
from fareduce.linalg import Matrix

theories = st.sampled_from(list(Theory))
seeds = st.integers(0, 2**32 - 1)


def _doc(**changes):
    doc = to_document(tetrahedron_automaton())
    doc.update(changes)
    return doc


def test_dirac():
    assert dirac(tetrahedron_automaton(), "q1") == (1, 0, 0, 0, 0)
    assert dirac(square_automaton(), "q3") == (0, 0, 1, 0)
    assert sum(dirac(square_automaton(), "q2")) == 1
    with pytest.raises(UnknownReference):
        dirac(square_automaton(), "q9")


def test_step_follows_the_drawn_edges():
    aut = tetrahedron_automaton()
    assert step(aut, dirac(aut, "q5"), "a") == (0, 0, F(1, 3), F(2, 3), 0)
    with pytest.raises(UnknownReference):
        step(aut, dirac(aut, "q5"), "b")


def test_step_with_identity_is_identity():
    aut = Automaton(Theory.LINEAR, ("a",), ("p", "q"), (1, 2), (Matrix.identity(2),))
    assert step(aut, (F(1, 3), -4), "a") == (F(1, 3), -4)
    assert transition_matrix(aut, "a") == Matrix.identity(2)


def test_obs_examples():
    aut = tetrahedron_automaton()
    assert obs(aut, dirac(aut, "q1"), ("a", "a")) == 1
    assert obs(aut, dirac(aut, "q5"), ("a",)) == F(1, 3)
    assert obs(aut, dirac(aut, "q3"), EPS) == 1
    chains = three_chains_automaton()
    for w in words_up_to(chains.alphabet, 6):
        assert obs(chains, dirac(chains, "q6"), w) == F(1, 4)


def test_transition_matrix_rows_are_steps_of_diracs():
    aut = tetrahedron_automaton()
    d = transition_matrix(aut, "a")
    assert d.row(2) == dirac(aut, "q4")
    for q in aut.states:
        assert d.row(aut.state_index(q)) == step(aut, dirac(aut, q), "a")


def test_stochasticity_is_preserved_by_step():
    rng = random.Random(4)
    for _ in range(100):
        aut = random_automaton(rng, Theory.CONVEX, rng.randint(1, 6), 2)
        v = random_vector(rng, Theory.CONVEX, aut.n)
        for a in aut.alphabet:
            w = step(aut, v, a)
            assert sum(w) == 1 and min(w) >= 0


@settings(max_examples=40, deadline=None)
@given(theories, seeds)
def test_obs_is_linear(theory, seed):
    rng = random.Random(seed)
    aut = random_automaton(rng, theory, rng.randint(1, 6), rng.randint(1, 2))
    u, v = random_vector(rng, theory, aut.n), random_vector(rng, theory, aut.n)
    alpha = F(rng.randint(0, 6), 6)
    beta = 1 - alpha if theory is Theory.CONVEX else F(rng.randint(0, 4), 3)
    mix = tuple(alpha * x + beta * y for x, y in zip(u, v))
    for w in words_up_to(aut.alphabet, 8 if len(aut.alphabet) == 1 else 5):
        assert obs(aut, mix, w) == alpha * obs(aut, u, w) + beta * obs(aut, v, w)


@settings(max_examples=30, deadline=None)
@given(theories, seeds)
def test_prepending_a_letter_is_a_step(theory, seed):
    rng = random.Random(seed)
    aut = random_automaton(rng, theory, rng.randint(1, 5), rng.randint(1, 2))
    v = random_vector(rng, theory, aut.n)
    for w in words_up_to(aut.alphabet, 6 if len(aut.alphabet) == 1 else 4):
        for a in aut.alphabet:
            assert obs(aut, v, (a,) + w) == obs(aut, step(aut, v, a), w)


@settings(max_examples=40, deadline=None)
@given(theories, seeds)
def test_round_trip(theory, seed):
    rng = random.Random(seed)
    n = rng.randint(1, 6)
    aut = random_automaton(rng, theory, n, rng.randint(1, 2), combos=rng.randint(0, n - 1))
    assert parse(emit(aut)) == aut
    assert emit(parse(emit(aut))) == emit(aut)


def test_round_trip_keeps_thirds():
    data = emit(tetrahedron_automaton())
    assert b'"1/3"' in data and b"0.33" not in data
    assert parse(data) == tetrahedron_automaton()


def test_substochastic_flag():
    doc = _doc(substochastic=True)
    doc["delta"]["a"]["q4"] = {"q4": "1/2"}
    aut = from_document(doc)
    assert aut.substochastic and parse(emit(aut)) == aut
    with pytest.raises(StochasticViolation):
        from_document(_doc(delta={"a": {"q1": {"q2": "1/2"}}}))


def test_row_summing_to_nine_tenths_names_state_and_letter():
    doc = _doc()
    doc["delta"]["a"]["q3"] = {"q4": "9/10"}
    with pytest.raises(StochasticViolation) as err:
        from_document(doc)
    assert "q3" in str(err.value) and "'a'" in str(err.value)
    assert err.value.location == "delta.a.q3"


@pytest.mark.parametrize(
    "mutate, error, location",
    [
        (lambda d: d["out"].update(q1="0.5"), MalformedRational, "out.q1"),
        (lambda d: d["out"].update(q1="1/0"), MalformedRational, "out.q1"),
        (lambda d: d["out"].update(q1="3/2"), StochasticViolation, "out.q1"),
        (lambda d: d["out"].update(q9="1"), UnknownReference, "out.q9"),
        (lambda d: d["delta"].update(b={}), UnknownReference, "delta.b"),
        (lambda d: d["delta"]["a"].update(q1={"q7": "1"}), UnknownReference, "delta.a.q1.q7"),
        (lambda d: d["delta"]["a"].update(q1={"q2": "2", "q3": "-1"}), NegativeWeight, "delta.a.q1.q3"),
        (lambda d: d.update(theory="tropical"), MalformedDocument, "theory"),
        (lambda d: d.pop("states"), MalformedDocument, ""),
    ],
)
def test_validation_diagnostics(mutate, error, location):
    doc = to_document(tetrahedron_automaton())
    mutate(doc)
    with pytest.raises(error) as err:
        from_document(doc)
    assert err.value.location == location


def test_conic_rejects_negative_weights():
    doc = {"theory": "conic", "alphabet": ["a"], "states": ["p"], "out": {"p": "1"}, "delta": {"a": {"p": {"p": "-1"}}}}
    with pytest.raises(NegativeWeight):
        from_document(doc)
    doc["theory"] = "linear"
    assert from_document(doc).delta[0] == Matrix([[-1]])


def test_invalid_json_reports_position():
    with pytest.raises(MalformedDocument) as err:
        parse('{"theory": "convex",\n  oops}')
    assert err.value.location.startswith("line 2")


def test_constructor_cannot_build_non_stochastic_automaton():
    with pytest.raises(StochasticViolation):
        Automaton(Theory.CONVEX, ("a",), ("p",), (1,), (Matrix([[F(1, 2)]]),))


def test_words_and_their_text_form():
    assert list(words_up_to(("a", "b"), 2)) == [(), ("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]
    assert format_word(()) == "eps"
    assert format_word(("a", "b")) == "ab"
    assert format_word(("go", "stop")) == "go.stop"
    assert parse_word("eps", ("a",)) == ()
    assert parse_word("aab", ("a", "b")) == ("a", "a", "b")
    assert parse_word("go.stop", ("go", "stop")) == ("go", "stop")
    with pytest.raises(UnknownReference):
        parse_word("ac", ("a", "b"))
    doc = json.loads(emit(square_automaton()))
    assert doc["alphabet"] == ["a"]
