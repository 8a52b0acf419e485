"""
Spectral clustering with two labelling modes
============================================

The k smallest eigenvectors of L = D - W embed each node as a point in
R^k.  Nodes in the same well-connected group land close together, so
either k-means or a rotation-and-round discretization can read off the
clusters.  Neither involves random initialization.
"""

import numpy as np

from cliquescope import laplacian, parse_edge_list, smallest_eigenpairs, spectral_cluster

# three triangles, chained by single weak edges
g = parse_edge_list(
    "a,b,2\nb,c,2\na,c,2\n"
    "d,e,2\ne,f,2\nd,f,2\n"
    "g,h,2\nh,i,2\ng,i,2\n"
    "c,d,0.5\nf,g,0.5".splitlines()
)

lap = laplacian(g)
emb = smallest_eigenpairs(lap, 3)
print("eigenvalues", np.round(emb.eigenvalues, 6))
# the first eigenvector of a connected graph is constant
print("first vector", np.round(emb.vectors[:, 0], 4))

for mode in ("kmeans", "discretize"):
    p = spectral_cluster(g, 3, mode=mode)
    print(mode, sorted(sorted(b) for b in p.blocks()))
