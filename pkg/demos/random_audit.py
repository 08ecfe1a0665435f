"""Reduce a batch of random automata and audit every result.

Run: python3 demos/random_audit.py [count] [seed]
"""
import random
import sys
from collections import Counter

from fareduce.automaton import Theory
from fareduce.generate import random_automaton
from fareduce.oracles import redundancy_bruteforce
from fareduce.reducer import reduce, verify

count = int(sys.argv[1]) if len(sys.argv) > 1 else 30
rng = random.Random(int(sys.argv[2]) if len(sys.argv) > 2 else 0)

removed = Counter()
for i in range(count):
    theory = list(Theory)[i % 3]
    n = rng.randint(2, 6)
    aut = random_automaton(rng, theory, n, rng.randint(1, 2), combos=rng.randint(0, n - 1))
    result = reduce(aut)
    report = verify(result, 10)
    leftover = [q for q in result.reduced.states if redundancy_bruteforce(result.reduced, q) is not None]
    if not report.passed or leftover:
        print("problem:", theory.value, report.summary(), leftover)
        sys.exit(1)
    removed[theory.value] += aut.n - result.reduced.n

print(f"{count} automata reduced and verified; states removed per theory: {dict(removed)}")
