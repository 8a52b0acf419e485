"""Immutable undirected weighted graphs and edge-list ingestion.

Nodes carry an external string label and a compact internal id assigned in
order of first appearance.  Every analysis works on internal ids; reports map
back to labels.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DENSE_NODE_LIMIT = 20_000


class GraphError(ValueError):
    """Raised for malformed input or invalid graph queries."""


class EdgeListError(GraphError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


@dataclass(frozen=True, eq=False)
class WeightedGraph:
    """Undirected weighted graph without self-loops or parallel edges.

    ``adjacency[i]`` is a tuple of ``(neighbor, weight)`` pairs sorted by
    neighbor id.  Construct through :meth:`from_edges` or
    :func:`parse_edge_list`, which validate the invariants.
    """

    labels: tuple[str, ...]
    adjacency: tuple[tuple[tuple[int, float], ...], ...]
    total_weight: float
    _index: dict[str, int] = field(repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        labels: Sequence[str],
        edges: Iterable[tuple[int, int, float]],
    ) -> WeightedGraph:
        labels = tuple(str(lab) for lab in labels)
        index = {}
        for i, lab in enumerate(labels):
            if not lab:
                raise GraphError("empty node label")
            if lab in index:
                raise GraphError(f"duplicate node label {lab!r}")
            index[lab] = i
        n = len(labels)
        nbrs: list[dict[int, float]] = [{} for _ in range(n)]
        for i, j, w in edges:
            w = float(w)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) references an unknown node")
            if i == j:
                raise GraphError(f"self-loop on {labels[i]!r}")
            if not np.isfinite(w) or w < 0:
                raise GraphError(f"invalid weight {w} on ({labels[i]!r}, {labels[j]!r})")
            if j in nbrs[i]:
                if nbrs[i][j] != w:
                    raise GraphError(
                        f"conflicting weights for ({labels[i]!r}, {labels[j]!r})"
                    )
                continue
            nbrs[i][j] = w
            nbrs[j][i] = w
        adjacency = tuple(tuple(sorted(d.items())) for d in nbrs)
        total = sum(w for i, row in enumerate(adjacency) for j, w in row if j > i)
        return cls(labels, adjacency, float(total), index)

    @property
    def n_nodes(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    def index_of(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown node label {label!r}") from None

    def _check(self, i: int) -> None:
        if not (isinstance(i, (int, np.integer)) and 0 <= i < self.n_nodes):
            raise GraphError(f"invalid node id {i!r}")

    def neighbors(self, i: int) -> list[int]:
        self._check(i)
        return [j for j, _ in self.adjacency[i]]

    def edges(self) -> list[tuple[int, int, float]]:
        """Each undirected edge once, as ``(i, j, w)`` with ``i < j``."""
        return [(i, j, w) for i, row in enumerate(self.adjacency) for j, w in row if j > i]

    def positive_neighbor_sets(self) -> list[set[int]]:
        """Neighbor sets restricted to edges of strictly positive weight."""
        return [{j for j, w in row if w > 0} for row in self.adjacency]

    def fingerprint(self) -> str:
        h = hashlib.sha1()
        for lab in self.labels:
            h.update(lab.encode())
            h.update(b"\0")
        for i, j, w in self.edges():
            h.update(f"{i},{j},{w!r};".encode())
        return h.hexdigest()

    def summary(self) -> str:
        return f"nodes={self.n_nodes} edges={self.n_edges} total_weight={self.total_weight:g}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return self.labels == other.labels and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.labels, self.adjacency))

    def __repr__(self) -> str:
        return f"WeightedGraph({self.summary()})"


def parse_edge_list(text: str | Iterable[str], delimiter: str = ",") -> WeightedGraph:
    """Parse ``labelA<delim>labelB[<delim>weight]`` lines into a graph.

    Blank lines and lines starting with ``#`` are skipped.  A missing weight
    defaults to 1.0.  Repeated pairs (in either orientation) must carry the
    same weight and are stored once.

    Use ``delimiter=None`` to split on runs of whitespace.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    labels: list[str] = []
    index: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}

    def node(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(delimiter)]
        if len(fields) not in (2, 3) or not fields[0] or not fields[1]:
            raise EdgeListError(f"expected 2 or 3 fields, got {raw.rstrip()!r}", lineno)
        a, b = fields[0], fields[1]
        if len(fields) == 3:
            try:
                w = float(fields[2])
            except ValueError:
                raise EdgeListError(f"weight {fields[2]!r} is not a number", lineno) from None
        else:
            w = 1.0
        if not np.isfinite(w):
            raise EdgeListError(f"weight {fields[2]!r} is not finite", lineno)
        if w < 0:
            raise EdgeListError(f"negative weight {w:g}", lineno)
        if a == b:
            raise EdgeListError(f"self-loop on {a!r}", lineno)
        i, j = node(a), node(b)
        key = (min(i, j), max(i, j))
        if key in weights:
            if weights[key] != w:
                raise EdgeListError(
                    f"edge ({a}, {b}) repeated with weight {w:g} != {weights[key]:g}", lineno
                )
            continue
        weights[key] = w

    return WeightedGraph.from_edges(labels, ((i, j, w) for (i, j), w in weights.items()))


def read_edge_list(path: str | Path, delimiter: str = ",") -> WeightedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh, delimiter=delimiter)


def drop_zero_edges(g: WeightedGraph) -> WeightedGraph:
    """Copy of ``g`` without zero-weight edges; isolated nodes are kept."""
    return WeightedGraph.from_edges(g.labels, [e for e in g.edges() if e[2] > 0])


def weighted_degree(g: WeightedGraph, i: int) -> float:
    g._check(i)
    return float(sum(w for _, w in g.adjacency[i]))


def weighted_degrees(g: WeightedGraph) -> np.ndarray:
    return np.array([sum(w for _, w in row) for row in g.adjacency], dtype=float)


def to_dense_adjacency(g: WeightedGraph, limit: int = DENSE_NODE_LIMIT) -> np.ndarray:
    """Symmetric ``n x n`` weight matrix with a zero diagonal."""
    n = g.n_nodes
    if n > limit:
        raise GraphError(f"graph has {n} nodes, above the dense limit of {limit}")
    a = np.zeros((n, n))
    for i, j, w in g.edges():
        a[i, j] = a[j, i] = w
    return a


def induced_subgraph(g: WeightedGraph, nodes: Iterable[int]) -> WeightedGraph:
    keep = sorted(set(nodes))
    remap = {old: new for new, old in enumerate(keep)}
    edges = [(remap[i], remap[j], w) for i, j, w in g.edges() if i in remap and j in remap]
    return WeightedGraph.from_edges([g.labels[i] for i in keep], edges)


def connected_components(g: WeightedGraph) -> list[list[int]]:
    """Components as sorted id lists, ordered by smallest member."""
    seen = [False] * g.n_nodes
    comps = []
    for s in range(g.n_nodes):
        if seen[s]:
            continue
        seen[s] = True
        stack, comp = [s], []
        while stack:
            v = stack.pop()
            comp.append(v)
            for u, _ in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    stack.append(u)
        comps.append(sorted(comp))
    return comps
