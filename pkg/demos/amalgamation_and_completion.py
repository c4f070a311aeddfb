"""Gluing metric spaces: path completion and strong amalgamation.

Partial edge-labelled graphs complete to metric spaces by capped shortest
paths (or minimax paths for the ultrametric world); two spaces sharing a
subspace glue into one, with every missing distance chosen from the distance
set by the one-point interval rule.
"""

from fractions import Fraction

from finmetric import (
    DistanceSet,
    EdgeLabelledGraph,
    FiniteMetricSpace,
    amalgamate,
    complete,
    validate,
)
from finmetric.spaces import space_to_text

# two triangles glued on an edge, completed by shortest paths
g = EdgeLabelledGraph(4)
for (i, j), v in {(0, 1): 1, (0, 2): 2, (1, 2): 2, (1, 3): 3, (2, 3): 1}.items():
    g.set_label(i, j, v)
space = complete(g, "sum-cap", r=100)
print("shortest-path completion of two glued triangles:")
print(space_to_text(space))

# the same machinery with max in place of sum gives ultrametric completions
star = EdgeLabelledGraph(3, {(0, 1): 1, (0, 2): 2})
ultra = complete(star, "max")
print("minimax completion of a star (leaf-to-leaf becomes the larger arm):")
print(space_to_text(ultra))
assert ultra.is_ultrametric()

# validation modes: the (1,1,3) triangle is the smallest metric failure
bad = EdgeLabelledGraph(3, {(0, 1): 1, (0, 2): 1, (1, 2): 3})
ok, witness = validate(bad, "metric")
print(f"triangle with labels 1,1,3 valid? {ok}, witness {witness}")

# strong amalgamation inside the class with distances {1,2,3}
s = DistanceSet((1, 2, 3))
tri = FiniteMetricSpace([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
glued = amalgamate(s, tri, tri, [0, 1], [0, 1])
print("two copies of a (1,2,3)-triangle glued along their first edge:")
print(space_to_text(glued))
print("the free pair received distance", glued.d[2][3])
