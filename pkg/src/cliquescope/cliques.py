"""Maximal clique enumeration (Bron-Kerbosch) and clique membership counts."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .graph import GraphError, WeightedGraph
from .scores import HIGHER, ScoreVector


@dataclass(frozen=True)
class CliqueSet:
    """Maximal cliques of one graph in canonical order.

    Each clique is a tuple of ascending internal ids; the tuples themselves
    are sorted lexicographically.
    """

    cliques: tuple[tuple[int, ...], ...]
    fingerprint: str

    def __len__(self) -> int:
        return len(self.cliques)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.cliques)

    def as_sets(self) -> set[frozenset[int]]:
        return {frozenset(c) for c in self.cliques}


def _bits(mask: int) -> Iterator[int]:
    """Set bit positions of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _pivot(P: int, X: int, adj: list[int]) -> int:
    best, best_count = -1, -1
    for u in _bits(P | X):
        count = (P & adj[u]).bit_count()
        if count > best_count:
            best, best_count = u, count
    return best


def bron_kerbosch(g: WeightedGraph, pivoting: bool = True) -> CliqueSet:
    """Enumerate every maximal clique of ``g`` exactly once.

    Only edges with positive weight count as adjacency.  Isolated nodes come
    out as singleton cliques.  With ``pivoting`` the branching set is
    ``P - N(u)`` for the pivot ``u`` in ``P | X`` with most neighbors in
    ``P`` (smallest id on ties); the result is the same set either way.

    Vertex sets are int bitmasks, and the recursion runs on an explicit
    stack so deep graphs cannot hit the interpreter's recursion limit.
    """
    adj = [0] * g.n_nodes
    for i, row in enumerate(g.adjacency):
        for j, w in row:
            if w > 0:
                adj[i] |= 1 << j
    found: list[tuple[int, ...]] = []

    def frame(R: tuple[int, ...], P: int, X: int) -> list:
        cand = P & ~adj[_pivot(P, X, adj)] if pivoting else P
        return [R, P, X, _bits(cand)]

    stack = [frame((), (1 << g.n_nodes) - 1, 0)] if g.n_nodes else []
    while stack:
        top = stack[-1]
        R, P, X, cand = top
        v = next(cand, None)
        if v is None:
            stack.pop()
            continue
        bit = 1 << v
        P2, X2 = P & adj[v], X & adj[v]
        top[1] = P & ~bit
        top[2] = X | bit
        if not P2:
            if not X2:
                found.append(tuple(sorted(R + (v,))))
            continue
        stack.append(frame(R + (v,), P2, X2))

    found.sort()
    return CliqueSet(tuple(found), g.fingerprint())


def clique_membership_counts(cs: CliqueSet, g: WeightedGraph) -> ScoreVector:
    """Number of maximal cliques containing each node."""
    if cs.fingerprint != g.fingerprint():
        raise GraphError("clique set was computed on a different graph")
    counts = np.zeros(g.n_nodes)
    for clique in cs.cliques:
        counts[list(clique)] += 1
    return ScoreVector(g.labels, counts, "clique", HIGHER)


def format_cliques(cs: CliqueSet, g: WeightedGraph) -> str:
    """One clique per line, member labels separated by single spaces."""
    return "".join(" ".join(g.labels[i] for i in c) + "\n" for c in cs.cliques)


def parse_cliques(text: str, g: WeightedGraph) -> CliqueSet:
    cliques = []
    for line in text.splitlines():
        if line.strip():
            cliques.append(tuple(sorted(g.index_of(lab) for lab in line.split())))
    cliques.sort()
    return CliqueSet(tuple(cliques), g.fingerprint())
