"""Article embedding and mini-batch k-means clustering.

Articles are embedded as the unweighted mean of their entities' semantic
vectors (cluster-label entities excluded by default, so the output does
not depend on other solutions). Clustering follows the mini-batch scheme
with per-centroid learning rates 1/(points seen): assignments for a batch
are computed first, then each centroid moves to the running mean of every
point it has ever received, which is exactly the sequential per-point
update.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from semcontext.entities import EntityId, EntityKind
from semcontext.errors import ClusteringError, UnknownEntityError, UnknownSolutionError
from semcontext.index import SemanticMatrix
from semcontext.ingest import BibRecord, extract_entities
from semcontext.solutions import ClusterSolution


@dataclass
class ArticleMatrix:
    """Dense article embeddings; rows follow ``article_ids`` order."""

    article_ids: list[str]
    vectors: np.ndarray  # float64, shape (n_articles, dims)
    skipped: list[str] = field(default_factory=list)  # un-embeddable articles

    @property
    def article_index(self) -> dict[str, int]:
        return {aid: i for i, aid in enumerate(self.article_ids)}


@dataclass(frozen=True)
class KMeansParams:
    k: int = 20
    batch_size: int = 1024
    max_iterations: int = 100
    tol: float = 1e-4  # centroid-shift threshold, relative to data scale
    seed: int = 0
    spherical: bool = False  # L2-normalize article vectors first (cosine-style)


@dataclass
class KMeansResult:
    solution: ClusterSolution
    centers: np.ndarray
    labels: np.ndarray
    inertia_initial: float
    inertia_final: float
    iterations: int
    reseeded_clusters: list[int] = field(default_factory=list)


def embed_articles(
    records: Sequence[BibRecord],
    S: SemanticMatrix,
    solutions: Sequence[ClusterSolution] = (),
    include_cluster_entities: bool = False,
) -> ArticleMatrix:
    """Mean entity vector per article, resolved against the index.

    Articles whose entities all miss the index are reported in
    ``skipped`` and excluded from the matrix.
    """
    vocab = S.term_keys()
    cluster_sources = solutions if include_cluster_entities else ()
    ids: list[str] = []
    rows: list[np.ndarray] = []
    skipped: list[str] = []
    for record in records:
        occurrences = extract_entities(record, vocab, cluster_sources)
        entity_rows = [S.row(e) for e in occurrences if e in S]
        if not entity_rows:
            skipped.append(record.article_id)
            continue
        ids.append(record.article_id)
        rows.append(S.vectors[entity_rows].astype(np.float64).mean(axis=0))
    vectors = np.vstack(rows) if rows else np.zeros((0, S.dims))
    return ArticleMatrix(article_ids=ids, vectors=vectors, skipped=skipped)


def _assign(X: np.ndarray, centers: np.ndarray) -> np.ndarray:
    """Nearest centroid per point (squared Euclidean, first-min ties)."""
    cross = X @ centers.T
    d2 = (centers * centers).sum(axis=1)[None, :] - 2.0 * cross
    return np.argmin(d2, axis=1)


def _inertia(X: np.ndarray, centers: np.ndarray, labels: np.ndarray) -> float:
    diff = X - centers[labels]
    return float(np.einsum("ij,ij->", diff, diff))


def kmeans_plusplus(X: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded k-means++ initialization (D^2 sampling)."""
    n = len(X)
    centers = np.empty((k, X.shape[1]), dtype=np.float64)
    centers[0] = X[int(rng.integers(n))]
    d2 = ((X - centers[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[c] = X[idx]
        d2 = np.minimum(d2, ((X - centers[c]) ** 2).sum(axis=1))
    return centers


def minibatch_kmeans(
    M: ArticleMatrix,
    params: KMeansParams,
    solution_id: str = "mb",
    initial_centers: np.ndarray | None = None,
) -> KMeansResult:
    """Cluster the article matrix; deterministic for a fixed seed.

    Initialization is k-means++ over a uniform sample. After the final
    full-data assignment pass, any empty cluster is reseeded from the
    point farthest from its centroid (and reported). The final inertia
    never exceeds the inertia at initialization.
    """
    X = np.asarray(M.vectors, dtype=np.float64)
    n = len(X)
    if not 1 <= params.k <= n:
        raise ClusteringError(f"k must be in [1, {n}], got {params.k}")
    if params.batch_size < 1:
        raise ClusteringError("batch_size must be >= 1")
    if params.spherical:
        norms = np.linalg.norm(X, axis=1, keepdims=True)
        X = X / np.where(norms == 0.0, 1.0, norms)

    rng = np.random.default_rng(params.seed)
    if initial_centers is not None:
        centers = np.array(initial_centers, dtype=np.float64)
        if centers.shape != (params.k, X.shape[1]):
            raise ClusteringError("initial_centers shape mismatch")
    else:
        sample_size = min(10 * params.k * params.batch_size, n)
        sample = rng.choice(n, size=sample_size, replace=False)
        centers = kmeans_plusplus(X[sample], params.k, rng)

    inertia_initial = _inertia(X, centers, _assign(X, centers))
    data_scale = float(np.sqrt((X * X).sum(axis=1).mean())) or 1.0

    seen = np.zeros(params.k, dtype=np.int64)
    iterations = 0
    for _ in range(params.max_iterations):
        iterations += 1
        batch_idx = rng.choice(n, size=min(params.batch_size, n), replace=False)
        B = X[batch_idx]
        assign = _assign(B, centers)
        previous = centers.copy()
        for c in np.unique(assign):
            members = B[assign == c]
            m = len(members)
            centers[c] = (seen[c] * centers[c] + members.sum(axis=0)) / (seen[c] + m)
            seen[c] += m
        shift = float(np.linalg.norm(centers - previous))
        if shift < params.tol * data_scale:
            break

    # Final full-data pass, with one full-batch centroid refinement so the
    # k=1 case lands exactly on the data mean.
    labels = _assign(X, centers)
    for c in range(params.k):
        members = X[labels == c]
        if len(members):
            centers[c] = members.mean(axis=0)
    labels = _assign(X, centers)

    reseeded: list[int] = []
    for _ in range(params.k):
        empty = np.setdiff1d(np.arange(params.k), np.unique(labels))
        if len(empty) == 0:
            break
        residual = np.linalg.norm(X - centers[labels], axis=1)
        farthest = int(np.argmax(residual))
        centers[int(empty[0])] = X[farthest]
        reseeded.append(int(empty[0]))
        labels = _assign(X, centers)

    inertia_final = _inertia(X, centers, labels)
    if inertia_final > inertia_initial:
        raise ClusteringError(
            f"final inertia {inertia_final:.6g} exceeds initial {inertia_initial:.6g}"
        )

    assignments = {aid: str(int(labels[i])) for i, aid in enumerate(M.article_ids)}
    solution = ClusterSolution(
        solution_id=solution_id,
        source_name=f"minibatch k={params.k}",
        assignments=assignments,
        raw_cluster_count=len(np.unique(labels)),
    )
    return KMeansResult(
        solution=solution,
        centers=centers,
        labels=labels,
        inertia_initial=inertia_initial,
        inertia_final=inertia_final,
        iterations=iterations,
        reseeded_clusters=reseeded,
    )


def _top_term_keys(S: SemanticMatrix, vector: np.ndarray, n: int) -> list[str]:
    if n <= 0:
        return []
    scores = S.cosine_to(vector)
    candidates = np.flatnonzero(S.kind_mask([EntityKind.TERM]))
    order = np.lexsort((candidates, -scores[candidates]))
    return [S.entities[row].key for row in candidates[order[:n]]]


def label_clusters(S: SemanticMatrix, solution_id: str, n: int = 9) -> dict[str, list[str]]:
    """Top-n topical terms per cluster of one indexed solution."""
    clusters = S.clusters_of(solution_id)
    if not clusters:
        raise UnknownSolutionError(f"no cluster entities for solution {solution_id!r}")
    return {c.key.split(" ", 1)[1]: _top_term_keys(S, S.vector(c), n) for c in clusters}


def label_solution(sol: ClusterSolution, S: SemanticMatrix, n: int = 9) -> dict[str, list[str]]:
    """Top-n topical terms per cluster of ``sol``; every cluster entity
    must already be present in the index."""
    out: dict[str, list[str]] = {}
    for cid in sol.cluster_ids:
        entity = EntityId(EntityKind.CLUSTER, f"{sol.solution_id} {cid}")
        if entity not in S:
            raise UnknownEntityError(f"cluster entity {entity.selector()} not in index")
        out[cid] = _top_term_keys(S, S.vector(entity), n)
    return out
