"""
Combining rankings into one key-figure score
============================================

A node that tops one list can be mediocre on another.  The average rank
takes the mean of a node's positions across several measures, with ties
sharing the mean of the positions they span.  Lower is more central.
"""

import numpy as np

from cliquescope import (
    ScoreVector,
    average_rank,
    clique_centrality,
    degree_centrality,
    format_table,
    parse_edge_list,
    rank_scores,
)

# a bowtie: two triangles glued at m, plus a tail on one side
g = parse_edge_list("a,b\na,m\nb,m\nm,c\nm,d\nc,d\nd,e")

deg = degree_centrality(g)
clq = clique_centrality(g)
for s in (deg, clq):
    r = rank_scores(s)
    print(s.measure, dict(zip(r.labels, r.ranks.tolist())))

avg = average_rank([rank_scores(deg), rank_scores(clq)])
print(format_table(avg, k=len(avg.labels)))

# ranks only depend on order, so any increasing transform leaves them alone
squashed = ScoreVector(deg.labels, np.arctan(deg.scores), "degree")
assert rank_scores(squashed).ranks.tolist() == rank_scores(deg).ranks.tolist()
