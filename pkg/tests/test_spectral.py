import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cliquescope.graph import GraphError, WeightedGraph, parse_edge_list
from cliquescope.spectral import (
    SpectralEmbedding,
    discretize_labels,
    format_embedding,
    jacobi_eigh,
    kmeans,
    kmeans_labels,
    laplacian,
    smallest_eigenpairs,
    spectral_cluster,
)
from oracles import complete_graph, disjoint_union, random_graph, same_set_partition


def emb(vectors, values=None):
    vectors = np.asarray(vectors, dtype=float)
    labels = tuple(str(i) for i in range(vectors.shape[0]))
    values = np.zeros(vectors.shape[1]) if values is None else np.asarray(values)
    return SpectralEmbedding(labels, vectors, values)


def test_laplacian_examples():
    assert laplacian(parse_edge_list("a,b")).matrix.tolist() == [[1, -1], [-1, 1]]
    assert laplacian(WeightedGraph.from_edges(["a", "b", "c"], [])).matrix.tolist() == [[0] * 3] * 3
    w = laplacian(parse_edge_list("a,b,2\nb,c,3")).matrix
    assert w.tolist() == [[2, -2, 0], [-2, 5, -3], [0, -3, 3]]


def test_laplacian_dense_limit():
    with pytest.raises(GraphError):
        laplacian(parse_edge_list("a,b\nb,c"), limit=2)


def test_path_eigenvalues():
    # det(L - t I) = -t (t - 1)(t - 3) for the unit path on three nodes
    e = smallest_eigenpairs(laplacian(parse_edge_list("a,b\nb,c")), 3)
    np.testing.assert_allclose(e.eigenvalues, [0, 1, 3], atol=1e-9)


def test_k2_eigenvalues_and_constant_vector():
    e = smallest_eigenpairs(laplacian(parse_edge_list("a,b")), 2)
    np.testing.assert_allclose(e.eigenvalues, [0, 2], atol=1e-12)
    np.testing.assert_allclose(e.vectors[:, 0], [2**-0.5, 2**-0.5], atol=1e-12)


def test_zero_multiplicity_equals_component_count():
    g = disjoint_union(complete_graph(3), complete_graph(3))
    e = smallest_eigenpairs(laplacian(g), 3)
    np.testing.assert_allclose(e.eigenvalues[:2], [0, 0], atol=1e-9)
    assert e.eigenvalues[2] > 1


def test_eigenvector_sign_convention(rng):
    g = random_graph(rng, 12, 0.4, weights=True)
    e = smallest_eigenpairs(laplacian(g), 5)
    for j in range(5):
        nz = np.flatnonzero(np.abs(e.vectors[:, j]) > 1e-12)
        assert e.vectors[nz[0], j] > 0


def test_k_out_of_range():
    lap = laplacian(parse_edge_list("a,b"))
    with pytest.raises(ValueError):
        smallest_eigenpairs(lap, 3)
    with pytest.raises(ValueError):
        smallest_eigenpairs(lap, 0)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 25))
def test_jacobi_against_lapack(seed, n):
    rng = np.random.default_rng(seed)
    a = rng.normal(size=(n, n))
    a = a + a.T
    w, v = jacobi_eigh(a)
    np.testing.assert_allclose(w, np.linalg.eigvalsh(a), atol=1e-8)
    np.testing.assert_allclose(v.T @ v, np.eye(n), atol=1e-9)
    assert np.max(np.abs(a @ v - v * w)) < 1e-6


def test_jacobi_trivial_cases():
    w, v = jacobi_eigh(np.zeros((3, 3)))
    assert w.tolist() == [0, 0, 0] and v.tolist() == np.eye(3).tolist()
    w, v = jacobi_eigh(np.array([[5.0]]))
    assert w.tolist() == [5.0]
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[0.0, 1.0], [2.0, 0.0]]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_laplacian_invariants(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, int(rng.integers(1, 20)), 0.3, weights=True)
    lap = laplacian(g).matrix
    assert np.array_equal(lap, lap.T)
    assert np.max(np.abs(lap.sum(axis=1)), initial=0) < 1e-12
    assert np.all(np.diag(lap) >= 0)
    k = int(rng.integers(1, g.n_nodes + 1))
    e = smallest_eigenpairs(laplacian(g), k)
    assert np.all(e.eigenvalues >= -1e-9)
    assert np.all(np.diff(e.eigenvalues) >= -1e-12)
    assert np.max(np.abs(lap @ e.vectors - e.vectors * e.eigenvalues)) < 1e-6
    gram = e.vectors.T @ e.vectors
    assert np.max(np.abs(gram - np.eye(k))) < 1e-6


def test_kmeans_distinct_points():
    x = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
    p = kmeans_labels(emb(x), 3)
    assert sorted(p.assignment.tolist()) == [0, 1, 2]


def test_kmeans_separated_groups_any_seed(rng):
    a = rng.normal(0, 0.05, size=(10, 3))
    b = rng.normal(5, 0.05, size=(8, 3))
    x = np.vstack([a, b])
    for seed in range(5):
        p = kmeans_labels(emb(x), 2, seed=seed)
        assert same_set_partition(p.assignment, [0] * 10 + [1] * 8)


def test_kmeans_k1_and_errors():
    x = np.arange(12.0).reshape(6, 2)
    assert kmeans_labels(emb(x), 1).assignment.tolist() == [0] * 6
    with pytest.raises(ValueError):
        kmeans_labels(emb(x), 7)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_kmeans_objective_non_increasing(seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(int(rng.integers(5, 40)), 3))
    k = int(rng.integers(1, 6))
    hist = kmeans(x, k, seed=seed).inertia_history
    assert all(b <= a + 1e-9 for a, b in zip(hist, hist[1:]))


def test_discretize_indicator_is_fixed_point():
    x = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0], [0, 0, 1]], dtype=float)
    p = discretize_labels(emb(x))
    assert same_set_partition(p.assignment, [0, 2, 1, 0, 2])


def test_discretize_k1():
    assert discretize_labels(emb(np.ones((4, 1)))).assignment.tolist() == [0] * 4


def test_discretize_degenerate_falls_back_to_kmeans(caplog):
    x = np.array([[1.0, 1.0], [2.0, 2.0], [-1.0, -1.0], [-2.0, -2.0]])
    p = discretize_labels(emb(x))
    assert "degenerate" in caplog.text
    assert p == kmeans_labels(emb(x), 2, seed=0)


@pytest.mark.parametrize("mode", ["kmeans", "discretize"])
def test_spectral_components(mode):
    tt = disjoint_union(complete_graph(3), complete_graph(3))
    assert spectral_cluster(tt, 2, mode=mode).assignment.tolist() == [0, 0, 0, 1, 1, 1]
    k4s = disjoint_union(*(complete_graph(4) for _ in range(3)))
    assert spectral_cluster(k4s, 3, mode=mode).assignment.tolist() == [0] * 4 + [1] * 4 + [2] * 4
    assert spectral_cluster(complete_graph(3), 1, mode=mode).assignment.tolist() == [0, 0, 0]


def test_spectral_bridged_triangles_split_at_bridge():
    g = parse_edge_list("a,b\nb,c\na,c\nx,y\ny,z\nx,z\nc,x")
    for mode in ("kmeans", "discretize"):
        assert spectral_cluster(g, 2, mode=mode).blocks() == {frozenset("abc"), frozenset("xyz")}


def test_spectral_unknown_mode():
    with pytest.raises(ValueError):
        spectral_cluster(parse_edge_list("a,b"), 1, mode="bogus")


def test_embedding_dump():
    e = smallest_eigenpairs(laplacian(parse_edge_list("a,b")), 2)
    lines = format_embedding(e).splitlines()
    assert [ln.split("\t")[0] for ln in lines] == ["a", "b"]
    assert all(len(ln.split("\t")) == 3 for ln in lines)
