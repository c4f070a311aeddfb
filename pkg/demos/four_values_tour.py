"""Tour of the 4-values condition: verdicts, witnesses, and quadruple tables.

A distance set S supports amalgamation of S-valued metric spaces exactly when
goodness of quadruples survives the inner swap.  This script classifies the
small sets and prints the bad-quadruple table of the classic example {1,2,5}.
"""

from finmetric import DistanceSet, bad_quadruples, check_four_values, similar
from finmetric.four_values import format_bad_quadruple_table

SMALL_SETS = [
    (1, 2), (1, 3),
    (2, 3, 4), (1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 3, 6), (1, 3, 7),
]

print("classification of small distance sets")
print("-" * 48)
for vals in SMALL_SETS:
    s = DistanceSet(vals)
    res = check_four_values(s)
    if res.holds:
        print(f"{str(s):14} amalgamation class")
    else:
        quad = ",".join(str(v) for v in res.witness)
        print(f"{str(s):14} fails, witness quadruple ({quad})")

print()
print("bad quadruples of {1, 2, 5}, grouped by empty admissible interval")
print("-" * 48)
print(format_bad_quadruple_table(bad_quadruples(DistanceSet((1, 2, 5)))))

print()
print("pattern equivalence: {1,2} and {2,3} carry the same triangle shapes:",
      similar(DistanceSet((1, 2)), DistanceSet((2, 3))))
print("but {1,2} and {1,3} do not:",
      similar(DistanceSet((1, 2)), DistanceSet((1, 3))))

print()
print("a four-element example from the long tables: {2,3,7,14}")
rows = bad_quadruples(DistanceSet((2, 3, 7, 14)))
print(format_bad_quadruple_table(rows))
