"""Centrality scores, fractional ranking and the average-rank key-figure score.

Degree and clique centrality ignore edge weights and only see edges of
positive weight.  Closeness, betweenness and Katz use every stored edge as
an unweighted hop; drop zero-weight edges first if they should not count.
"""

from __future__ import annotations

import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .cliques import bron_kerbosch, clique_membership_counts
from .graph import WeightedGraph
from .scores import HIGHER, LOWER, Ranking, ScoreVector, format_number

KATZ_ALPHA = 0.005
KATZ_BETA = 1.0
KATZ_TOL = 1e-9
KATZ_MAX_ITER = 1000


class ConvergenceError(RuntimeError):
    pass


def degree_centrality(g: WeightedGraph) -> ScoreVector:
    deg = [sum(1 for _, w in row if w > 0) for row in g.adjacency]
    return ScoreVector(g.labels, np.array(deg, dtype=float), "degree", HIGHER)


def clique_centrality(g: WeightedGraph, pivoting: bool = True) -> ScoreVector:
    return clique_membership_counts(bron_kerbosch(g, pivoting=pivoting), g)


def _bfs(g: WeightedGraph, s: int) -> list[int]:
    dist = [-1] * g.n_nodes
    dist[s] = 0
    queue = deque([s])
    while queue:
        v = queue.popleft()
        for u, _ in g.adjacency[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def closeness_centrality(g: WeightedGraph) -> ScoreVector:
    """Sum of hop distances to every node reachable from each node.

    Lower is more central.  On a disconnected graph the sum only covers the
    node's own component; ``component_sizes`` records how many nodes that is.
    """
    n = g.n_nodes
    totals = np.zeros(n)
    sizes = np.zeros(n, dtype=int)
    for s in range(n):
        reached = [d for d in _bfs(g, s) if d >= 0]
        totals[s] = sum(reached)
        sizes[s] = len(reached)
    return ScoreVector(g.labels, totals, "closeness", LOWER, component_sizes=sizes)


def _brandes_from(g: WeightedGraph, sources: Sequence[int]) -> np.ndarray:
    n = g.n_nodes
    nbrs = [[u for u, _ in row] for row in g.adjacency]
    acc = np.zeros(n)
    for s in sources:
        order = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [-1] * n
        sigma[s], dist[s] = 1, 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            order.append(v)
            dv = dist[v] + 1
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        for w in reversed(order):
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                acc[w] += delta[w]
    return acc


def betweenness_centrality(g: WeightedGraph, threads: int | None = None) -> ScoreVector:
    """Unnormalized shortest-path betweenness over unordered node pairs.

    Brandes' dependency accumulation with BFS (hop-count) distances.  Every
    source contributes each unordered pair twice, hence the final halving.
    ``threads`` splits sources into contiguous chunks whose partial sums are
    reduced in chunk order, so the result only depends on the thread count;
    it defaults to ``CLIQUESCOPE_THREADS`` or 1.
    """
    n = g.n_nodes
    if threads is None:
        threads = int(os.environ.get("CLIQUESCOPE_THREADS", "1") or 1)
    threads = max(1, min(threads, n or 1))
    if threads == 1:
        acc = _brandes_from(g, range(n))
    else:
        chunks = np.array_split(np.arange(n), threads)
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda c: _brandes_from(g, c.tolist()), chunks))
        acc = np.zeros(n)
        for part in parts:
            acc += part
    return ScoreVector(g.labels, acc / 2.0, "betweenness", HIGHER)


def katz_centrality(
    g: WeightedGraph,
    alpha: float = KATZ_ALPHA,
    beta: float = KATZ_BETA,
    tol: float = KATZ_TOL,
    max_iter: int = KATZ_MAX_ITER,
) -> ScoreVector:
    """Fixed point of ``x = alpha * A @ x + beta`` on the unweighted adjacency.

    Iterates from ``x = beta`` until the max-norm change drops below ``tol``.
    Raises ConvergenceError if that does not happen within ``max_iter``
    steps or the iterate blows up, which means ``alpha`` is at or above the
    reciprocal spectral radius.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    n = g.n_nodes
    rows = np.repeat(np.arange(n), [len(r) for r in g.adjacency])
    cols = np.array([j for r in g.adjacency for j, _ in r], dtype=int)
    x = np.full(n, float(beta))
    for _ in range(max_iter):
        ax = np.zeros(n)
        with np.errstate(over="ignore", invalid="ignore"):
            np.add.at(ax, rows, x[cols])
            new = alpha * ax + beta
        if not np.all(np.isfinite(new)):
            break
        change = np.max(np.abs(new - x)) if n else 0.0
        x = new
        if change < tol:
            return ScoreVector(g.labels, x, "katz", HIGHER)
    raise ConvergenceError(
        f"Katz iteration did not converge in {max_iter} steps (alpha={alpha} may be too large)"
    )


def rank_scores(s: ScoreVector) -> Ranking:
    """Fractional ranking: ties share the mean of the positions they span."""
    keys = -s.scores if s.direction == HIGHER else s.scores
    return Ranking(s.labels, rankdata(keys, method="average"), s.measure)


def average_rank(rankings: Sequence[Ranking]) -> ScoreVector:
    """Mean rank per node across several rankings; lower is more central."""
    if not rankings:
        raise ValueError("average_rank needs at least one ranking")
    labels = rankings[0].labels
    for r in rankings[1:]:
        if r.labels != labels:
            if set(r.labels) != set(labels):
                raise ValueError(f"ranking {r.measure!r} covers a different node set")
    stacked = []
    for r in rankings:
        if r.labels == labels:
            stacked.append(r.ranks)
        else:
            pos = {lab: i for i, lab in enumerate(r.labels)}
            stacked.append(r.ranks[[pos[lab] for lab in labels]])
    total = np.sum(stacked, axis=0)
    return ScoreVector(labels, total / len(rankings), "average-rank", LOWER)


def top_k_report(s: ScoreVector, k: int) -> list[tuple[str, float]]:
    """The ``k`` most central ``(label, score)`` pairs; ties by ascending label."""
    if k < 1:
        raise ValueError("k must be at least 1")
    sign = -1.0 if s.direction == HIGHER else 1.0
    order = sorted(range(len(s)), key=lambda i: (sign * s.scores[i], s.labels[i]))
    return [(s.labels[i], float(s.scores[i])) for i in order[:k]]


def format_report(s: ScoreVector, k: int | None = None) -> str:
    """``rank<TAB>label<TAB>score`` lines, most central first."""
    rows = top_k_report(s, k or max(len(s), 1))
    return "".join(
        f"{rank}\t{label}\t{format_number(score)}\n" for rank, (label, score) in enumerate(rows, 1)
    )


def format_table(s: ScoreVector, k: int = 10) -> str:
    """Console table in the ``label (score)`` style."""
    lines = [f"Rank\t{s.measure}"]
    for rank, (label, score) in enumerate(top_k_report(s, k), 1):
        lines.append(f"{rank}\t{label} ({format_number(score)})")
    return "\n".join(lines) + "\n"


MEASURES = {
    "degree": degree_centrality,
    "clique": clique_centrality,
    "closeness": closeness_centrality,
    "betweenness": betweenness_centrality,
    "katz": katz_centrality,
}
