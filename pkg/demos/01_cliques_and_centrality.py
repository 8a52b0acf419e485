"""
Maximal cliques and centrality on a small friendship graph
==========================================================

Two tight friend groups share one member, and a third person hangs off
the side.  We list the maximal cliques and then score every node with
the five centrality measures.
"""

from cliquescope import (
    betweenness_centrality,
    bron_kerbosch,
    clique_centrality,
    closeness_centrality,
    degree_centrality,
    format_table,
    katz_centrality,
    parse_edge_list,
)

# weights count shared friends; the third column is optional
g = parse_edge_list(
    """
    ana,ben,3
    ana,cat,2
    ben,cat,4
    cat,dev,1
    dev,eli,2
    dev,fay,2
    eli,fay,5
    cat,eli,1
    fay,gus,1
    """.splitlines()
)
print(g.summary())

# Bron-Kerbosch with pivoting; cliques come back sorted by internal id
cliques = bron_kerbosch(g)
for c in cliques.cliques:
    print(" ".join(g.labels[i] for i in c))

# degree and clique counts favour the hubs, closeness is a sum of hops
# (lower is more central), betweenness counts shortest paths through a node
for measure in (degree_centrality, clique_centrality, closeness_centrality,
                betweenness_centrality, katz_centrality):
    print(format_table(measure(g), k=3))
