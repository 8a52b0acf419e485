"""
Louvain communities on a ring of cliques
========================================

Six four-node cliques joined in a ring.  Local moving first merges nodes
inside each clique; aggregation then decides whether neighbouring
cliques should fuse.  Each level's modularity is non-decreasing.
"""

import itertools

from cliquescope import WeightedGraph, louvain, modularity

labels, edges = [], []
for b in range(6):
    base = 4 * b
    labels += [f"b{b}_{i}" for i in range(4)]
    edges += [(base + i, base + j, 1.0) for i, j in itertools.combinations(range(4), 2)]
    edges.append((base + 3, (base + 4) % 24, 1.0))
g = WeightedGraph.from_edges(labels, edges)

result = louvain(g)
print(result.summary())
for level, (p, q) in enumerate(zip(result.levels, result.modularities)):
    print(f"level {level}: {p.count} communities, Q = {q:.6f}")

# the reported value is just modularity of the final partition
assert abs(modularity(g, result.partition) - result.modularities[-1]) < 1e-12
for block in sorted(result.partition.blocks(), key=min):
    print(sorted(block))
