"""A reduced automaton can still have states nobody reaches.

Three independent two-state chains.  The sixth state behaves like an even
mix of two others, so reduction removes it; nothing else is redundant even
though, from any single start state, most of the automaton is unreachable.

Run: python3 demos/reduced_is_not_minimal.py
"""
from fractions import Fraction

from fareduce.automaton import dirac, format_word, obs, words_up_to
from fareduce.fixtures import three_chains_automaton
from fareduce.oracles import EquivQuery, equiv_exact, redundancy_bruteforce
from fareduce.reducer import reduce, verify

aut = three_chains_automaton()
for w in words_up_to(aut.alphabet, 3):
    print(format_word(w), [str(obs(aut, dirac(aut, q), w)) for q in aut.states])

result = reduce(aut)
print("\nkept:", result.base)
print("q6 rewrites to", {p: str(c) for p, c in result.rewrite.as_dict()["q6"].items()})

# The LP may pick a different mix than 1/2 q2 + 1/2 q4; only the language matters.
half = Fraction(1, 2)
query = EquivQuery(aut, dirac(aut, "q6"), aut, (0, half, 0, half, 0, 0))
print("q6 equals 1/2 q2 + 1/2 q4:", equiv_exact(query).equal)
print(verify(result, 12).summary())

print("\nredundant states left:", [q for q in result.reduced.states if redundancy_bruteforce(result.reduced, q) is not None])
