"""Automata with exact rational weights and their word semantics.

An automaton carries a *theory* that fixes which combinations of states are
allowed:

* ``convex``  -- probabilistic automata; transition rows are distributions
  and outputs lie in ``[0, 1]``;
* ``linear``  -- weighted automata over the field of rationals;
* ``conic``   -- weighted automata over the nonnegative rationals.

States and letters are strings kept in document order; every matrix and
vector in the package is indexed by that order.  A state vector is a plain
tuple of Fractions.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .linalg import Matrix, as_fraction, format_fraction, vector

__all__ = [
    "Theory",
    "Automaton",
    "AutomatonError",
    "MalformedRational",
    "StochasticViolation",
    "NegativeWeight",
    "UnknownReference",
    "MalformedDocument",
    "Word",
    "EPS",
    "dirac",
    "step",
    "obs",
    "transition_matrix",
    "parse",
    "emit",
    "to_document",
    "from_document",
    "parse_word",
    "format_word",
    "words_up_to",
    "check_state_vector",
    "parse_rational",
]

Word = tuple[str, ...]
EPS: Word = ()


class Theory(enum.Enum):
    CONVEX = "convex"
    LINEAR = "linear"
    CONIC = "conic"


class AutomatonError(ValueError):
    """Invalid automaton data.  ``location`` is a dotted path into the document."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class MalformedRational(AutomatonError):
    pass


class StochasticViolation(AutomatonError):
    pass


class NegativeWeight(AutomatonError):
    pass


class UnknownReference(AutomatonError):
    pass


class MalformedDocument(AutomatonError):
    pass


@dataclass(frozen=True)
class Automaton:
    """A finite automaton with rational outputs and per-letter transition matrices.

    ``delta[k]`` is the matrix for ``alphabet[k]``; its row ``i`` holds the
    successor combination of ``states[i]``.  Construction validates every
    invariant of the theory, so a convex automaton with a non-stochastic row
    cannot exist.
    """

    theory: Theory
    alphabet: tuple[str, ...]
    states: tuple[str, ...]
    out: tuple[Fraction, ...]
    delta: tuple[Matrix, ...]
    substochastic: bool = False

    def __post_init__(self):
        theory = Theory(self.theory)
        alphabet = tuple(self.alphabet)
        states = tuple(self.states)
        out = vector(self.out)
        delta = tuple(d if isinstance(d, Matrix) else Matrix(d) for d in self.delta)
        object.__setattr__(self, "theory", theory)
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "out", out)
        object.__setattr__(self, "delta", delta)

        if not alphabet:
            raise MalformedDocument("alphabet must be nonempty", "alphabet")
        if len(set(alphabet)) != len(alphabet):
            raise MalformedDocument("duplicate letters", "alphabet")
        if any(not isinstance(a, str) or not a for a in alphabet):
            raise MalformedDocument("letters must be nonempty strings", "alphabet")
        if not states and theory is Theory.CONVEX:
            raise MalformedDocument("a probabilistic automaton needs at least one state", "states")
        if len(set(states)) != len(states):
            raise MalformedDocument("duplicate states", "states")
        n = len(states)
        if len(out) != n:
            raise MalformedDocument(f"expected {n} outputs, got {len(out)}", "out")
        if len(delta) != len(alphabet):
            raise MalformedDocument("one transition matrix per letter required", "delta")
        for a, d in zip(alphabet, delta):
            if d.shape != (n, n):
                raise MalformedDocument(f"matrix has shape {d.shape}, expected {(n, n)}", f"delta.{a}")
        if self.substochastic and theory is not Theory.CONVEX:
            raise MalformedDocument("substochastic only applies to convex theory", "substochastic")

        if theory is Theory.CONVEX:
            for q, o in zip(states, out):
                if not 0 <= o <= 1:
                    raise StochasticViolation(f"output {format_fraction(o)} outside [0, 1]", f"out.{q}")
            for a, d in zip(alphabet, delta):
                for q, row in zip(states, d.rows):
                    for p, w in zip(states, row):
                        if w < 0:
                            raise NegativeWeight(f"negative weight {format_fraction(w)}", f"delta.{a}.{q}.{p}")
                    total = sum(row, Fraction(0))
                    if total > 1 or (total != 1 and not self.substochastic):
                        raise StochasticViolation(
                            f"row of state {q!r} under letter {a!r} sums to {format_fraction(total)}",
                            f"delta.{a}.{q}",
                        )
        elif theory is Theory.CONIC:
            for q, o in zip(states, out):
                if o < 0:
                    raise NegativeWeight(f"negative output {format_fraction(o)}", f"out.{q}")
            for a, d in zip(alphabet, delta):
                for q, row in zip(states, d.rows):
                    for p, w in zip(states, row):
                        if w < 0:
                            raise NegativeWeight(f"negative weight {format_fraction(w)}", f"delta.{a}.{q}.{p}")

    @property
    def n(self) -> int:
        return len(self.states)

    def state_index(self, q: str) -> int:
        try:
            return self.states.index(q)
        except ValueError:
            raise UnknownReference(f"unknown state {q!r}") from None

    def letter_index(self, a: str) -> int:
        try:
            return self.alphabet.index(a)
        except ValueError:
            raise UnknownReference(f"unknown letter {a!r}") from None

    def check_word(self, w: Sequence[str]) -> Word:
        w = tuple(w)
        for a in w:
            self.letter_index(a)
        return w


def dirac(aut: Automaton, q: str) -> tuple[Fraction, ...]:
    i = aut.state_index(q)
    return tuple(Fraction(int(j == i)) for j in range(aut.n))


def check_state_vector(theory: Theory, v: Sequence[Fraction]) -> None:
    """Raise if ``v`` is not a legal combination under ``theory``."""
    theory = Theory(theory)
    if theory is Theory.LINEAR:
        return
    if any(x < 0 for x in v):
        raise ValueError("state vector has negative entries")
    if theory is Theory.CONVEX and sum(v, Fraction(0)) != 1:
        raise ValueError("state vector does not sum to 1")


def transition_matrix(aut: Automaton, a: str) -> Matrix:
    return aut.delta[aut.letter_index(a)]


def step(aut: Automaton, v: Sequence, a: str) -> tuple[Fraction, ...]:
    """Successor combination ``v^T D_a``."""
    v = vector(v)
    if len(v) != aut.n:
        raise ValueError(f"state vector has length {len(v)}, automaton has {aut.n} states")
    return v @ transition_matrix(aut, a)


def obs(aut: Automaton, v: Sequence, w: Sequence[str] = EPS) -> Fraction:
    """Weight of word ``w`` from the combination ``v``."""
    v = vector(v)
    for a in w:
        v = step(aut, v, a)
    return sum((x * o for x, o in zip(v, aut.out)), Fraction(0))


def words_up_to(alphabet: Sequence[str], max_len: int) -> Iterable[Word]:
    """All words of length ``<= max_len`` in length-lexicographic order."""
    layer = [EPS]
    for _ in range(max_len + 1):
        yield from layer
        layer = [w + (a,) for w in layer for a in alphabet]


# --------------------------------------------------------------------------
# words on the command line and in dumps


def format_word(w: Sequence[str]) -> str:
    """``eps`` for the empty word; letters joined directly, or by ``.`` if any letter is longer than one character."""
    w = tuple(w)
    if not w:
        return "eps"
    sep = "." if any(len(a) > 1 for a in w) else ""
    return sep.join(w)


def parse_word(text: str, alphabet: Sequence[str]) -> Word:
    text = text.strip()
    if text in ("eps", "ε", ""):
        return EPS
    if "." in text:
        w = tuple(text.split("."))
    else:
        # greedy longest match against the alphabet
        letters = sorted(alphabet, key=len, reverse=True)
        w, i = [], 0
        while i < len(text):
            a = next((a for a in letters if text.startswith(a, i)), None)
            if a is None:
                raise UnknownReference(f"cannot read a letter at position {i} of word {text!r}")
            w.append(a)
            i += len(a)
        w = tuple(w)
    for a in w:
        if a not in alphabet:
            raise UnknownReference(f"unknown letter {a!r} in word {text!r}")
    return w


# --------------------------------------------------------------------------
# JSON documents


def parse_rational(x, location: str = "") -> Fraction:
    """Read ``"p"`` or ``"p/q"`` (or a JSON integer); decimals are rejected."""
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise MalformedRational(f"expected a rational string, got {x!r}", location)
    if isinstance(x, int):
        return Fraction(x)
    s = x.strip()
    num, slash, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if slash else 1
    except ValueError:
        raise MalformedRational(f"malformed rational {x!r}", location) from None
    if q <= 0:
        raise MalformedRational(f"denominator must be positive in {x!r}", location)
    return Fraction(p, q)


def from_document(doc: Mapping) -> Automaton:
    if not isinstance(doc, Mapping):
        raise MalformedDocument("top level must be an object")
    for key in ("theory", "alphabet", "states", "out", "delta"):
        if key not in doc:
            raise MalformedDocument(f"missing key {key!r}")
    try:
        theory = Theory(doc["theory"])
    except ValueError:
        raise MalformedDocument(f"unknown theory {doc['theory']!r}", "theory") from None
    alphabet = doc["alphabet"]
    states = doc["states"]
    if not isinstance(alphabet, list) or not all(isinstance(a, str) for a in alphabet):
        raise MalformedDocument("alphabet must be a list of strings", "alphabet")
    if not isinstance(states, list) or not all(isinstance(q, str) for q in states):
        raise MalformedDocument("states must be a list of strings", "states")
    index = {q: i for i, q in enumerate(states)}
    n = len(states)

    out_doc = doc["out"]
    if not isinstance(out_doc, Mapping):
        raise MalformedDocument("out must be an object", "out")
    out = [Fraction(0)] * n
    for q, x in out_doc.items():
        if q not in index:
            raise UnknownReference(f"unknown state {q!r}", f"out.{q}")
        out[index[q]] = parse_rational(x, f"out.{q}")

    delta_doc = doc["delta"]
    if not isinstance(delta_doc, Mapping):
        raise MalformedDocument("delta must be an object", "delta")
    for a in delta_doc:
        if a not in alphabet:
            raise UnknownReference(f"unknown letter {a!r}", f"delta.{a}")
    delta = []
    for a in alphabet:
        rows = [[Fraction(0)] * n for _ in range(n)]
        by_state = delta_doc.get(a, {})
        if not isinstance(by_state, Mapping):
            raise MalformedDocument("expected an object", f"delta.{a}")
        for q, succ in by_state.items():
            if q not in index:
                raise UnknownReference(f"unknown state {q!r}", f"delta.{a}.{q}")
            if not isinstance(succ, Mapping):
                raise MalformedDocument("expected an object", f"delta.{a}.{q}")
            for p, w in succ.items():
                if p not in index:
                    raise UnknownReference(f"unknown state {p!r}", f"delta.{a}.{q}.{p}")
                rows[index[q]][index[p]] = parse_rational(w, f"delta.{a}.{q}.{p}")
        delta.append(Matrix(rows, ncols=n))

    sub = doc.get("substochastic", False)
    if not isinstance(sub, bool):
        raise MalformedDocument("substochastic must be a boolean", "substochastic")
    return Automaton(theory, tuple(alphabet), tuple(states), tuple(out), tuple(delta), substochastic=sub)


def to_document(aut: Automaton) -> dict:
    doc = {
        "theory": aut.theory.value,
        "alphabet": list(aut.alphabet),
        "states": list(aut.states),
        "out": {q: format_fraction(o) for q, o in zip(aut.states, aut.out)},
        "delta": {},
    }
    for a, d in zip(aut.alphabet, aut.delta):
        by_state = {}
        for q, row in zip(aut.states, d.rows):
            succ = {p: format_fraction(w) for p, w in zip(aut.states, row) if w != 0}
            if succ:
                by_state[q] = succ
        doc["delta"][a] = by_state
    if aut.substochastic:
        doc["substochastic"] = True
    return doc


def parse(text: Union[str, bytes]) -> Automaton:
    """Read an automaton from its JSON document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"invalid JSON: {e.msg}", f"line {e.lineno} column {e.colno}") from None
    except UnicodeDecodeError as e:
        raise MalformedDocument(f"not valid text: {e.reason}", f"byte {e.start}") from None
    return from_document(doc)


def emit(aut: Automaton) -> bytes:
    """Canonical JSON bytes; ``parse(emit(a)) == a``."""
    return (json.dumps(to_document(aut), indent=2, ensure_ascii=False) + "\n").encode("utf-8")
