"""Ramsey degrees as exact integer invariants, plus the finite arrow check.

The degree of a space counts its order types: all orderings divided by the
isometry group.  For ultrametric spaces the relevant orderings are the convex
ones (tree-interval orderings); for a distance set with critical values, the
orderings keeping closeness classes together.
"""

from finmetric import (
    FiniteMetricSpace,
    DistanceSet,
    comb_space,
    critical_distances,
    metric_orderings_count,
    ramsey_degree_general,
    ramsey_degree_metric_ordered,
    ramsey_degree_ultrametric,
    verify_arrow,
)
from finmetric.spaces import Config

print("general degrees: space | LO | iso | degree")
for name, x in [
    ("equilateral 4", FiniteMetricSpace.equilateral(4, 1)),
    ("scalene triangle", FiniteMetricSpace([[0, 2, 3], [2, 0, 4], [3, 4, 0]])),
]:
    rec = ramsey_degree_general(x)
    print(f"  {name:18} | {rec.orderings:3} | {rec.iso:2} | {rec.degree}")

print("\nultrametric combs are extremal: degree 2^(n-2)")
for n in range(3, 7):
    rec = ramsey_degree_ultrametric(comb_space(n))
    print(f"  comb with {n} leaves: cLO={rec.orderings:3}  iso={rec.iso:2}  degree={rec.degree}")

print("\ncritical distances steer the ordered classes:")
for vals in ((1, 2, 5), (1, 3, 4), (1, 3, 7)):
    s = DistanceSet(vals)
    crits = critical_distances(s)
    print(f"  {s}: critical = {{" + ", ".join(str(c) for c in crits) + "}")

blocks = FiniteMetricSpace(
    [[0, 1, 5, 5], [1, 0, 5, 5], [5, 5, 0, 2], [5, 5, 2, 0]]
)
s125 = DistanceSet((1, 2, 5))
print(f"\ntwo 2-point blocks over {s125}: "
      f"mLO = {metric_orderings_count(blocks, s125)}, "
      f"degree = {ramsey_degree_metric_ordered(blocks, s125).degree}")

print("\nthe finite arrow check recovers the classic two-coloring threshold:")
pair = FiniteMetricSpace.equilateral(2, 1)
triangle = FiniteMetricSpace.equilateral(3, 1)
for n in (5, 6):
    z = FiniteMetricSpace.equilateral(n, 1)
    res = verify_arrow(z, triangle, pair, k=2, config=Config(arrow_copy_budget=16))
    print(f"  {n}-point space arrows (triangle)^pair with 2 colors: {res.holds}"
          + ("" if res.holds else f"  (witness coloring {''.join(map(str, res.witness_coloring))})"))
