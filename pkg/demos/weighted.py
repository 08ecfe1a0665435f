"""Weighted automata: span over the rationals and cones over the nonnegative rationals.

Run: python3 demos/weighted.py
"""
from fareduce.automaton import dirac
from fareduce.fixtures import conic_sum_automaton, dependent_linear_automaton
from fareduce.oracles import EquivQuery, equiv_up_to
from fareduce.reducer import reduce_wa, verify
from fareduce.table import format_table, make_consistent

for aut in (dependent_linear_automaton(), conic_sum_automaton()):
    print(f"== {aut.theory.value}, {aut.n} states")
    print(format_table(make_consistent(aut)))
    result = reduce_wa(aut)
    for q, expansion in result.rewrite.as_dict().items():
        print(f"  {q} -> {({p: str(c) for p, c in expansion.items()}) or 'zero'}")
    print(" ", verify(result, 10).summary())
    for q in aut.states:
        query = EquivQuery(aut, dirac(aut, q), result.reduced, result.rewrite.expansion(q))
        assert equiv_up_to(query, 10).equal
    print()
