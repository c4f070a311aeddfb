"""Two constructions behind indivisibility results, checked at finite scale.

The gluing space fattens coarse copies back to fine ones within 1/m: its
partial labelling must survive the capped path completion, which reduces to
every irreducible cycle being metric.  The tree codings place four-value
distances on pairs or triples of binary/ternary strings and embed every
small space over the matching distance set.
"""

import random
from fractions import Fraction

from finmetric import FiniteMetricSpace, hedgehog_build, hedgehog_verify
from finmetric.hedgehog import ceil_to_grid
from finmetric.milliken import VARIANTS, coding_embed, load_variant, milliken_space, verify_embedding

# a 4-point prefix with distances in (0,1]
prefix = FiniteMetricSpace([
    [0, Fraction(3, 10), Fraction(1, 2), Fraction(4, 5)],
    [Fraction(3, 10), 0, Fraction(2, 5), Fraction(7, 10)],
    [Fraction(1, 2), Fraction(2, 5), 0, Fraction(9, 10)],
    [Fraction(4, 5), Fraction(7, 10), Fraction(9, 10), 0],
])
for m in (1, 2, 3):
    z = hedgehog_build(m, prefix)
    report = hedgehog_verify(z)
    print(f"m={m}: {z.base_count} coarse points + {len(z.tree_nodes)} tree nodes; "
          f"labels preserved: {report.labels_preserved}; "
          f"{report.cycles_checked} cycles checked; "
          f"{report.branches_verified} branches isometric to prefixes")

print("\nrounding example: 0.3 -> ", ceil_to_grid(Fraction(3, 10), 2), "on the half grid")

print("\ntree codings: metric verdicts and an embedding")
for name in VARIANTS:
    variant = load_variant(name)
    depth = 3 if variant.alphabet == 2 and variant.tuple_size == 2 else 2
    ms = milliken_space(name, depth)
    print(f"  variant {name}: {len(ms.points)} points at depth {depth}, "
          f"metric: {ms.metric}")

rng = random.Random(5)
target = FiniteMetricSpace([
    [0, 2, 7, 9], [2, 0, 7, 9], [7, 7, 0, 3], [9, 9, 3, 0]
])
emb = coding_embed("2379", 5, target)
print("\nembedding a 4-point {2,3,7,9}-space into the pair coding at depth 5:")
for point, coords in enumerate(emb):
    pretty = ", ".join("".join(map(str, c)) if c else "()" for c in coords)
    print(f"  point {point} -> {{{pretty}}}")
print("verified isometric:", verify_embedding("2379", emb, target))
