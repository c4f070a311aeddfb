"""Exact l_p embedding weights for ultrametric spaces.

Every finite ultrametric space embeds isometrically into l_p of dimension at
most n(n+1)/2.  The embedding weights live on the nodes of the ball tree, and
the isometry identity (sum of separating weights = distance^p) is verified
entirely in rational arithmetic: no real roots are ever taken.
"""

from fractions import Fraction

from finmetric import FiniteMetricSpace, comb_space, fichet_embedding, tree_of_space

x = comb_space(4, distances=(4, 2, 1))
print("comb over distances 4 > 2 > 1, four leaves")
tree = tree_of_space(x)
print(f"ball tree: {tree.n_nodes()} nodes, levels {tree.level_distances}")

for p in (1, 2, 3):
    rep = fichet_embedding(x, p)
    print(f"\np = {p}: dimension {rep.dimension} (bound {rep.dimension_bound})")
    for node, wp in sorted(rep.node_weights_p.items()):
        print(f"  node {node:2}  weight^{p} = {wp}")
    # the verification report carries one exact identity per pair
    (i, j), lhs, rhs = rep.pair_checks[0]
    print(f"  e.g. pair ({i},{j}): sum of separating weights = {lhs} = d^{p} = {rhs}")
