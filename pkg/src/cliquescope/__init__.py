"""Weighted social-graph analytics: maximal cliques, centrality rankings,
Louvain communities, spectral clustering and spring-layout figures."""

__version__ = "0.1.0"

from .centrality import (
    ConvergenceError,
    average_rank,
    betweenness_centrality,
    clique_centrality,
    closeness_centrality,
    degree_centrality,
    format_report,
    format_table,
    katz_centrality,
    rank_scores,
    top_k_report,
)
from .cliques import CliqueSet, bron_kerbosch, clique_membership_counts, format_cliques
from .community import LouvainResult, Partition, louvain, modularity, modularity_gain
from .graph import (
    EdgeListError,
    GraphError,
    WeightedGraph,
    drop_zero_edges,
    parse_edge_list,
    read_edge_list,
    to_dense_adjacency,
    weighted_degree,
)
from .layout import export_csv, export_svg, spring_layout
from .scores import Ranking, ScoreVector
from .spectral import (
    Laplacian,
    SpectralEmbedding,
    discretize_labels,
    kmeans_labels,
    laplacian,
    smallest_eigenpairs,
    spectral_cluster,
)
