"""Article embedding and mini-batch k-means behavior."""

from __future__ import annotations

import numpy as np
import pytest

from semcontext.clustering import (
    ArticleMatrix,
    KMeansParams,
    embed_articles,
    kmeans_plusplus,
    label_clusters,
    label_solution,
    minibatch_kmeans,
)
from semcontext.entities import EntityId, EntityKind
from semcontext.errors import ClusteringError, UnknownEntityError
from semcontext.ingest import BibRecord
from semcontext.solutions import ClusterSolution

from conftest import TOY_RECORDS, gaussian_blobs


class TestEmbedArticles:
    def test_single_entity_is_exact_vector(self, toy_index):
        record = BibRecord("E1", "zzz nothing matches", "", authors=("smak j",))
        M = embed_articles([record], toy_index)
        expected = toy_index.vector(EntityId(EntityKind.AUTHOR, "smak j")).astype(np.float64)
        assert np.allclose(M.vectors[0], expected)

    def test_mean_of_three(self, toy_index):
        record = BibRecord("E1", "x", "", authors=("smak j", "doe j", "fox m"))
        M = embed_articles([record], toy_index)
        rows = [
            toy_index.vector(EntityId(EntityKind.AUTHOR, a)).astype(np.float64)
            for a in ("smak j", "doe j", "fox m")
        ]
        assert np.allclose(M.vectors[0], (rows[0] + rows[1] + rows[2]) / 3)

    def test_unresolvable_article_skipped(self, toy_index):
        record = BibRecord("E1", "zzz qqq www", "")
        M = embed_articles([record], toy_index)
        assert M.article_ids == [] and M.skipped == ["E1"]

    def test_cluster_entities_excluded_by_default(self, toy_index, toy_solutions):
        base = embed_articles(TOY_RECORDS, toy_index)
        with_sols = embed_articles(TOY_RECORDS, toy_index, toy_solutions, include_cluster_entities=False)
        assert np.allclose(base.vectors, with_sols.vectors)
        included = embed_articles(TOY_RECORDS, toy_index, toy_solutions, include_cluster_entities=True)
        assert not np.allclose(base.vectors, included.vectors)

    def test_permutation_invariant(self, toy_index):
        a = BibRecord("E1", "x", "", authors=("smak j", "doe j"))
        b = BibRecord("E1", "x", "", authors=("doe j", "smak j"))
        Ma = embed_articles([a], toy_index)
        Mb = embed_articles([b], toy_index)
        assert np.allclose(Ma.vectors, Mb.vectors)


def _matrix(points: np.ndarray) -> ArticleMatrix:
    return ArticleMatrix(article_ids=[f"P{i:05d}" for i in range(len(points))], vectors=points)


def lloyd(X: np.ndarray, centers: np.ndarray, max_iter: int = 300) -> tuple[np.ndarray, float]:
    """Full-batch oracle from the same initialization."""
    centers = centers.copy()
    labels = None
    for _ in range(max_iter):
        d2 = ((X[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2) if X.shape[1] <= 8 else None
        if d2 is None:
            cross = X @ centers.T
            d2 = (centers * centers).sum(axis=1)[None, :] - 2 * cross
        new_labels = np.argmin(d2, axis=1)
        if labels is not None and (new_labels == labels).all():
            break
        labels = new_labels
        for c in range(len(centers)):
            members = X[labels == c]
            if len(members):
                centers[c] = members.mean(axis=0)
    diff = X - centers[labels]
    return labels, float((diff * diff).sum())


def purity(labels: np.ndarray, truth: np.ndarray) -> float:
    total = 0
    for c in np.unique(labels):
        values, counts = np.unique(truth[labels == c], return_counts=True)
        total += counts.max()
    return total / len(labels)


class TestMiniBatchKMeans:
    def test_k1_degenerates_to_mean(self):
        rng = np.random.default_rng(0)
        X = rng.standard_normal((300, 12))
        result = minibatch_kmeans(_matrix(X), KMeansParams(k=1, batch_size=64, seed=1))
        mean = X.mean(axis=0)
        rel = np.linalg.norm(result.centers[0] - mean) / np.linalg.norm(mean)
        assert rel < 1e-5
        assert set(result.solution.assignments.values()) == {"0"}

    def test_blob_recovery_small(self):
        X, truth, _ = gaussian_blobs(1200, 40, 3, separation=30.0, seed=2)
        result = minibatch_kmeans(_matrix(X), KMeansParams(k=3, batch_size=128, seed=3))
        assert purity(result.labels, truth) >= 0.95
        assert result.inertia_final <= result.inertia_initial

    def test_close_to_lloyd_from_same_init(self):
        X, _, _ = gaussian_blobs(1000, 24, 3, separation=25.0, seed=4)
        rng = np.random.default_rng(5)
        init = kmeans_plusplus(X, 3, rng)
        result = minibatch_kmeans(_matrix(X), KMeansParams(k=3, batch_size=128, seed=5), initial_centers=init)
        _, lloyd_inertia = lloyd(X, init)
        assert result.inertia_final <= 1.10 * lloyd_inertia

    def test_seeded_reproducibility(self):
        X, _, _ = gaussian_blobs(500, 16, 4, separation=12.0, seed=6)
        p = KMeansParams(k=4, batch_size=100, seed=7)
        a = minibatch_kmeans(_matrix(X), p)
        b = minibatch_kmeans(_matrix(X), p)
        assert a.solution.assignments == b.solution.assignments
        assert (a.centers == b.centers).all()

    def test_k_larger_than_n_is_error(self):
        X = np.zeros((5, 3))
        with pytest.raises(ClusteringError):
            minibatch_kmeans(_matrix(X), KMeansParams(k=6))

    def test_empty_cluster_reseeded_and_reported(self):
        rng = np.random.default_rng(8)
        X = np.vstack([rng.standard_normal((50, 4)), rng.standard_normal((50, 4)) + 40.0])
        # Third centroid starts far from all data and never receives a point.
        init = np.vstack([X[0], X[50], np.full(4, 1e6)])
        result = minibatch_kmeans(_matrix(X), KMeansParams(k=3, batch_size=25, seed=9), initial_centers=init)
        assert result.reseeded_clusters == [2]
        assert len(np.unique(result.labels)) == 3
        assert result.inertia_final <= result.inertia_initial

    def test_unique_assignment(self):
        X, _, _ = gaussian_blobs(400, 8, 3, separation=15.0, seed=10)
        result = minibatch_kmeans(_matrix(X), KMeansParams(k=3, batch_size=64, seed=11))
        assert sorted(result.solution.assignments) == [f"P{i:05d}" for i in range(400)]

    def test_spherical_mode_ignores_vector_length(self):
        # Two directions, wildly different magnitudes within each.
        rng = np.random.default_rng(12)
        u = np.array([1.0, 0.0, 0.0, 0.0])
        w = np.array([0.0, 1.0, 0.0, 0.0])
        scales = rng.uniform(0.1, 50.0, size=200)
        X = np.vstack([scales[:100, None] * u, scales[100:, None] * w])
        X += rng.normal(scale=0.01, size=X.shape)
        result = minibatch_kmeans(_matrix(X), KMeansParams(k=2, batch_size=50, seed=13, spherical=True))
        truth = np.repeat([0, 1], 100)
        assert purity(result.labels, truth) == 1.0


class TestLabels:
    def test_n_zero_gives_empty_lists(self, toy_index):
        labels = label_clusters(toy_index, "a", n=0)
        assert set(labels) == {"1", "2"}
        assert all(v == [] for v in labels.values())

    def test_labels_are_terms(self, toy_index):
        labels = label_clusters(toy_index, "a", n=3)
        vocabulary = toy_index.term_keys()
        for terms in labels.values():
            assert len(terms) == 3
            assert set(terms) <= vocabulary

    def test_topic_separation(self, toy_index):
        # Solution "a" groups cosmology (cluster 1) vs stellar (cluster 2).
        labels = label_clusters(toy_index, "a", n=3)
        assert "dark energy" in labels["1"] or "cosmology" in labels["1"]
        assert any(t in {"magnetic flux", "mass transfer", "dwarf novae", "stellar"} for t in labels["2"])

    def test_label_solution_requires_indexed_entities(self, toy_index):
        sol = ClusterSolution(solution_id="zz", assignments={"T01": "9"})
        with pytest.raises(UnknownEntityError, match="zz 9"):
            label_solution(sol, toy_index, n=3)

    def test_label_solution_matches_label_clusters(self, toy_index, toy_solutions):
        by_solution = label_solution(toy_solutions[0], toy_index, n=4)
        by_index = label_clusters(toy_index, "a", n=4)
        assert by_solution == by_index
