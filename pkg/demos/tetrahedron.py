"""Grow an observation table for a five-state chain and reduce it.

Run: python3 demos/tetrahedron.py
"""
from fareduce.automaton import format_word
from fareduce.fixtures import tetrahedron_automaton
from fareduce.reducer import reduce, verify
from fareduce.table import build_table, check_consistency, format_table, make_consistent

aut = tetrahedron_automaton()

# Start from the empty word alone.  q1 and q2 both output 1/2, so the table
# cannot tell them apart, but one more letter does.
table = build_table(aut, [()])
print(format_table(table))
defect = check_consistency(table, "a", engine="lp")
left = " ".join(map(str, defect.left))
right = " ".join(map(str, defect.right))
print(f"defect on word {format_word(defect.word)}: ({left}) vs ({right})\n")

# Keep adding the offending word until nothing separates equal rows.
table = make_consistent(aut)
print("consistent table:")
print(format_table(table))

# q5's row (1/2, 1/3, 0) sits inside the tetrahedron spanned by q1..q4.
result = reduce(aut)
print("base:", ", ".join(result.base))
for q, expansion in result.rewrite.as_dict().items():
    terms = " + ".join(f"{c} {p}" for p, c in expansion.items())
    print(f"{q} -> {terms}")

report = verify(result, max_len=12)
print(report.summary())
