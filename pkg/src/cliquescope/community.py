"""Modularity and deterministic Louvain community detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import GraphError, WeightedGraph

MIN_GAIN = 1e-7
MAX_LEVELS = 50


@dataclass(frozen=True, eq=False)
class Partition:
    """Community id per node, ids dense in ``0..count-1``.

    Ids are renumbered by first appearance in node order, so two
    partitions that group nodes identically compare equal.
    """

    labels: tuple[str, ...]
    assignment: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.assignment)
        if a.shape != (len(self.labels),):
            raise ValueError(f"expected {len(self.labels)} assignments, got shape {a.shape}")
        a = canonical_ids(a)
        a.setflags(write=False)
        object.__setattr__(self, "assignment", a)

    @property
    def count(self) -> int:
        return int(self.assignment.max()) + 1 if len(self.assignment) else 0

    def blocks(self) -> set[frozenset[str]]:
        """The partition as an unordered set of label sets."""
        groups: dict[int, set[str]] = {}
        for lab, c in zip(self.labels, self.assignment.tolist()):
            groups.setdefault(c, set()).add(lab)
        return {frozenset(v) for v in groups.values()}

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.labels, self.assignment.tolist()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.assignment, other.assignment)

    def __hash__(self) -> int:
        return hash((self.labels, self.assignment.tobytes()))


def canonical_ids(assignment: Sequence[int]) -> np.ndarray:
    seen: dict[int, int] = {}
    out = np.empty(len(assignment), dtype=np.int64)
    for i, c in enumerate(np.asarray(assignment).tolist()):
        out[i] = seen.setdefault(c, len(seen))
    return out


@dataclass
class AggregateGraph:
    """Weighted graph that may carry self-loops, used between Louvain levels.

    ``self_loops[i]`` is the diagonal entry ``A_ii``; a community whose
    internal edges weigh ``w`` in total becomes a super-node with
    ``A_ii = 2w``, so weighted degrees and ``2m`` are preserved.
    """

    neighbors: list[dict[int, float]]
    self_loops: np.ndarray

    @classmethod
    def from_graph(cls, g: WeightedGraph) -> AggregateGraph:
        return cls([dict(row) for row in g.adjacency], np.zeros(g.n_nodes))

    @property
    def n(self) -> int:
        return len(self.neighbors)

    def degrees(self) -> np.ndarray:
        return np.array(
            [sum(row.values()) + self.self_loops[i] for i, row in enumerate(self.neighbors)]
        )

    def two_m(self) -> float:
        return float(self.degrees().sum())


def _as_aggregate(g) -> AggregateGraph:
    return AggregateGraph.from_graph(g) if isinstance(g, WeightedGraph) else g


def modularity(g: WeightedGraph | AggregateGraph, p: Partition | Sequence[int]) -> float:
    """Newman modularity, summed over all ordered node pairs including i == j."""
    agg = _as_aggregate(g)
    assignment = np.asarray(p.assignment if isinstance(p, Partition) else p)
    if len(assignment) != agg.n:
        raise GraphError("partition does not cover the graph's nodes")
    two_m = agg.two_m()
    if two_m <= 0:
        raise GraphError("modularity is undefined on a graph with no edge weight")
    internal = float(sum(agg.self_loops[i] for i in range(agg.n)))
    for i, row in enumerate(agg.neighbors):
        ci = assignment[i]
        internal += sum(w for j, w in row.items() if assignment[j] == ci)
    k = agg.degrees()
    tot = np.zeros(int(assignment.max()) + 1)
    np.add.at(tot, assignment, k)
    return internal / two_m - float(np.sum(tot**2)) / two_m**2


def _insertion_gain(k_in: float, tot: float, k_i: float, m: float) -> float:
    # Change in Q when a singleton node joins a community, relative to staying alone.
    return k_in / m - tot * k_i / (2.0 * m * m)


def modularity_gain(
    g: WeightedGraph | AggregateGraph,
    assignment: Sequence[int],
    node: int,
    target: int,
    community_weights: np.ndarray | None = None,
) -> float:
    """Change in modularity from moving ``node`` into community ``target``.

    ``community_weights[c]`` is the summed weighted degree of community ``c``
    under ``assignment``; it is recomputed when omitted.
    """
    agg = _as_aggregate(g)
    a = np.asarray(assignment)
    k = agg.degrees()
    m = k.sum() / 2.0
    if community_weights is None:
        community_weights = np.zeros(max(int(a.max()), target) + 1)
        np.add.at(community_weights, a, k)
    source = int(a[node])
    if target == source:
        return 0.0
    k_i = k[node]
    links = {source: 0.0, target: 0.0}
    for j, w in agg.neighbors[node].items():
        c = int(a[j])
        if c in links:
            links[c] += w
    tot_src = community_weights[source] - k_i
    tot_tgt = community_weights[target] if target < len(community_weights) else 0.0
    assert tot_src > -1e-9, "community weight cache is inconsistent"
    return _insertion_gain(links[target], tot_tgt, k_i, m) - _insertion_gain(
        links[source], tot_src, k_i, m
    )


def _local_moving(agg: AggregateGraph, min_gain: float) -> np.ndarray:
    n = agg.n
    k = agg.degrees()
    m = k.sum() / 2.0
    comm = np.arange(n)
    tot = k.copy()
    # smallest member id per community, for tie-breaking; only ever decreases
    # while a community is non-empty, and is reset when it empties
    members = [{i} for i in range(n)]
    while True:
        sweep_gain = 0.0
        moved = False
        for i in range(n):
            src = comm[i]
            k_i = k[i]
            links: dict[int, float] = {}
            for j, w in agg.neighbors[i].items():
                c = comm[j]
                links[c] = links.get(c, 0.0) + w
            tot[src] -= k_i
            stay = _insertion_gain(links.get(src, 0.0), tot[src], k_i, m)
            best, best_gain, best_key = src, 0.0, None
            for c, k_in in links.items():
                if c == src:
                    continue
                gain = _insertion_gain(k_in, tot[c], k_i, m) - stay
                if gain <= 0:
                    continue
                key = min(members[c])
                if gain > best_gain or (gain == best_gain and key < best_key):
                    best, best_gain, best_key = c, gain, key
            tot[best] += k_i
            if best != src:
                comm[i] = best
                members[src].discard(i)
                members[best].add(i)
                sweep_gain += best_gain
                moved = True
        if not moved or sweep_gain < min_gain:
            return comm


def aggregate(agg: AggregateGraph, assignment: Sequence[int]) -> AggregateGraph:
    """Collapse each community of ``assignment`` (dense ids) to one node."""
    a = np.asarray(assignment)
    count = int(a.max()) + 1
    loops = np.zeros(count)
    np.add.at(loops, a, agg.self_loops)
    nbrs: list[dict[int, float]] = [{} for _ in range(count)]
    for i, row in enumerate(agg.neighbors):
        ci = a[i]
        for j, w in row.items():
            cj = a[j]
            if ci == cj:
                loops[ci] += w  # each internal edge is seen from both ends
            else:
                nbrs[ci][cj] = nbrs[ci].get(cj, 0.0) + w
    return AggregateGraph(nbrs, loops)


@dataclass(frozen=True)
class LouvainResult:
    partition: Partition
    levels: tuple[Partition, ...]
    modularities: tuple[float, ...]

    def summary(self) -> str:
        q = self.modularities[-1]
        return f"levels={len(self.levels)} communities={self.partition.count} modularity={q:.6f}"


def louvain(g: WeightedGraph, min_gain: float = MIN_GAIN, max_levels: int = MAX_LEVELS) -> LouvainResult:
    """Louvain modularity optimization with a fixed ascending sweep order.

    Each level runs local moving until a sweep gains less than ``min_gain``
    and then aggregates communities into super-nodes.  Stops when a level
    merges nothing or after ``max_levels`` levels.  Every recorded level is
    flattened back onto the original nodes.
    """
    if g.total_weight <= 0:
        raise GraphError("louvain needs a graph with positive total edge weight")
    agg = AggregateGraph.from_graph(g)
    flat = np.arange(g.n_nodes)
    levels: list[Partition] = []
    qs: list[float] = []
    for _ in range(max_levels):
        comm = canonical_ids(_local_moving(agg, min_gain))
        if len(levels) and comm.max() + 1 == agg.n:
            break
        flat = comm[flat]
        part = Partition(g.labels, flat)
        levels.append(part)
        qs.append(modularity(g, part))
        if comm.max() + 1 == agg.n:
            break
        agg = aggregate(agg, comm)
    return LouvainResult(levels[-1], tuple(levels), tuple(qs))


def format_partition(p: Partition) -> str:
    """``label<TAB>community_id`` per line, in node order."""
    return "".join(f"{lab}\t{c}\n" for lab, c in zip(p.labels, p.assignment.tolist()))


def parse_partition(text: str) -> Partition:
    labels, ids = [], []
    for line in text.splitlines():
        if line.strip():
            lab, c = line.rsplit("\t", 1)
            labels.append(lab)
            ids.append(int(c))
    return Partition(tuple(labels), np.array(ids, dtype=np.int64))
