"""Unnormalized spectral clustering on L = D - W.

The eigensolver is a cyclic Jacobi method.  Rotations are scheduled in
round-robin (tournament) order: each round pairs every index with exactly
one partner, and because rotations on disjoint index pairs commute, a whole
round is applied as one vectorized update.  It is meant for desk-scale
graphs (a few thousand nodes at most).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .community import Partition
from .graph import DENSE_NODE_LIMIT, WeightedGraph, to_dense_adjacency

log = logging.getLogger(__name__)

JACOBI_TOL = 1e-10
JACOBI_MAX_SWEEPS = 100
KMEANS_TOL = 1e-9
KMEANS_MAX_ITER = 300
DISCRETIZE_MAX_ITER = 100
SPECTRAL_DESK_LIMIT = 3_000


class EigenConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class Laplacian:
    labels: tuple[str, ...]
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class SpectralEmbedding:
    """Column ``j`` of ``vectors`` is the eigenvector of the ``j``-th smallest eigenvalue."""

    labels: tuple[str, ...]
    vectors: np.ndarray
    eigenvalues: np.ndarray

    @property
    def k(self) -> int:
        return self.vectors.shape[1]


def laplacian(g: WeightedGraph, limit: int = DENSE_NODE_LIMIT) -> Laplacian:
    w = to_dense_adjacency(g, limit=limit)
    lap = np.diag(w.sum(axis=1)) - w
    return Laplacian(g.labels, lap)


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    # Circle method: fix slot 0, rotate the rest.  An odd n gets a dummy
    # index n that is dropped from every round.
    m = n + (n % 2)
    slots = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for a in range(m // 2):
            p, q = slots[a], slots[m - 1 - a]
            if p < n and q < n:
                ps.append(min(p, q))
                qs.append(max(p, q))
        rounds.append((np.array(ps, dtype=int), np.array(qs, dtype=int)))
        slots = [slots[0], slots[-1]] + slots[1:-1]
    return rounds


def jacobi_eigh(
    a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS
) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the Frobenius norm of the off-diagonal part is at most
    ``tol`` times the Frobenius norm of the whole matrix (absolute ``tol``
    for a zero matrix).  Returns ascending eigenvalues and the matching
    orthonormal eigenvectors as columns.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0, atol=1e-12 * max(1.0, np.abs(a).max(initial=0))):
        raise ValueError("matrix must be symmetric")
    a = (a + a.T) / 2
    v = np.eye(n)
    scale = max(np.linalg.norm(a), 1.0)
    rounds = _round_robin(n)

    def off(x):
        return np.linalg.norm(x - np.diag(np.diag(x)))

    for _ in range(max_sweeps):
        if off(a) <= tol * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 1e-300 * scale
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = a[p, p], a[q, q]
            theta = (aqq - app) / (2.0 * apq)
            # for huge theta, t ~ 1 / (2 theta) avoids overflow in theta**2
            big = np.abs(theta) > 1e150
            safe = np.where(big, 0.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t[safe == 0] = 1.0
            t[big] = 0.5 / theta[big]
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # rows p, q then columns p, q: A <- J^T A J with J[p,p]=J[q,q]=c, J[p,q]=s, J[q,p]=-s
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - s[:, None] * rq
            a[q, :] = s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = cp * c - cq * s
            a[:, q] = cp * s + cq * c
            vp, vq = v[:, p].copy(), v[:, q].copy()
            v[:, p] = vp * c - vq * s
            v[:, q] = vp * s + vq * c
    else:
        if off(a) > tol * scale:
            raise EigenConvergenceError(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def _fix_signs(vectors: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    vectors = vectors.copy()
    for j in range(vectors.shape[1]):
        nz = np.flatnonzero(np.abs(vectors[:, j]) > eps)
        if len(nz) and vectors[nz[0], j] < 0:
            vectors[:, j] *= -1
    return vectors


def smallest_eigenpairs(lap: Laplacian, k: int) -> SpectralEmbedding:
    """The ``k`` smallest eigenpairs, first nonzero entry of each vector positive."""
    n = lap.matrix.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    w, v = jacobi_eigh(lap.matrix)
    return SpectralEmbedding(lap.labels, _fix_signs(v[:, :k]), w[:k])


@dataclass(frozen=True)
class KMeansResult:
    labels: np.ndarray
    centroids: np.ndarray
    inertia_history: tuple[float, ...]
    n_iter: int


def _farthest_point_seeds(x: np.ndarray, k: int) -> np.ndarray:
    # argmax returns the first (smallest) index on ties
    chosen = [int(np.argmax(np.einsum("ij,ij->i", x, x)))]
    d2 = np.sum((x - x[chosen[0]]) ** 2, axis=1)
    while len(chosen) < k:
        nxt = int(np.argmax(d2))
        chosen.append(nxt)
        d2 = np.minimum(d2, np.sum((x - x[nxt]) ** 2, axis=1))
    return x[chosen].copy()


def kmeans(
    x: np.ndarray,
    k: int,
    seed: int = 0,
    tol: float = KMEANS_TOL,
    max_iter: int = KMEANS_MAX_ITER,
) -> KMeansResult:
    """Lloyd's algorithm from deterministic farthest-point seeds.

    The first centroid is the row of largest norm, each further one the row
    farthest from those already chosen.  ``seed`` only drives the re-seeding
    of a cluster that goes empty.
    """
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    rng = np.random.default_rng(seed)
    centroids = _farthest_point_seeds(x, k)
    history = []
    it = 0
    for it in range(1, max_iter + 1):
        d2 = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        labels = np.argmin(d2, axis=1)
        history.append(float(d2[np.arange(n), labels].sum()))
        new = centroids.copy()
        for c in range(k):
            members = labels == c
            if members.any():
                new[c] = x[members].mean(axis=0)
            else:
                new[c] = x[rng.integers(n)]
        shift = np.max(np.linalg.norm(new - centroids, axis=1))
        centroids = new
        if shift < tol:
            break
    d2 = ((x[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    labels = np.argmin(d2, axis=1)
    history.append(float(d2[np.arange(n), labels].sum()))
    return KMeansResult(labels, centroids, tuple(history), it)


def kmeans_labels(e: SpectralEmbedding, k: int, seed: int = 0) -> Partition:
    n = e.vectors.shape[0]
    if k > n:
        raise ValueError(f"k={k} exceeds the number of nodes ({n})")
    return Partition(e.labels, kmeans(e.vectors, k, seed=seed).labels)


def _initial_rotation(y: np.ndarray) -> np.ndarray:
    # pick k rows whose directions are mutually as orthogonal as possible;
    # only the choice uses unit rows, the embedding itself stays unscaled
    n, k = y.shape
    norms = np.linalg.norm(y, axis=1)
    u = np.divide(y, norms[:, None], out=np.zeros_like(y), where=norms[:, None] > 1e-12)
    r = np.zeros((k, k))
    r[:, 0] = u[int(np.argmax(norms))]
    overlap = np.where(norms > 1e-12, 0.0, np.inf)
    for j in range(1, k):
        overlap += np.abs(u @ r[:, j - 1])
        r[:, j] = u[int(np.argmin(overlap))]
    return r


def discretize_labels(e: SpectralEmbedding, max_iter: int = DISCRETIZE_MAX_ITER) -> Partition:
    """Rotate the embedding towards a cluster-indicator matrix.

    Rows are used as they are.  Two steps alternate: assign each
    row to the column where ``Y @ R`` is largest, and refit ``R`` as the
    orthogonal Procrustes rotation taking ``Y`` onto the indicator matrix.
    The start rotation is built from mutually most orthogonal rows, so no
    randomness is involved.  A rank-deficient embedding falls back to
    :func:`kmeans_labels` with seed 0.
    """
    x = np.asarray(e.vectors, dtype=float)
    n, k = x.shape
    if k == 1:
        return Partition(e.labels, np.zeros(n, dtype=int))
    if np.linalg.matrix_rank(x) < k:
        log.warning("degenerate spectral embedding (rank < %d); using k-means", k)
        return kmeans_labels(e, k, seed=0)
    y = x
    r = _initial_rotation(y)
    labels = None
    for _ in range(max_iter):
        new = np.argmax(y @ r, axis=1)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        ind = np.zeros((n, k))
        ind[np.arange(n), labels] = 1.0
        u, _, vt = np.linalg.svd(y.T @ ind)
        r = u @ vt
    return Partition(e.labels, labels)


def spectral_cluster(
    g: WeightedGraph, k: int, mode: str = "discretize", seed: int = 0
) -> Partition:
    if mode not in ("kmeans", "discretize"):
        raise ValueError(f"unknown label mode {mode!r}")
    emb = smallest_eigenpairs(laplacian(g), k)
    if mode == "kmeans":
        return kmeans_labels(emb, k, seed=seed)
    return discretize_labels(emb)


def format_embedding(e: SpectralEmbedding) -> str:
    return "".join(
        lab + "".join(f"\t{v:.10g}" for v in row) + "\n"
        for lab, row in zip(e.labels, e.vectors.tolist())
    )
