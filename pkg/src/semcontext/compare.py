"""Cross-solution cluster comparison.

Two complementary views: a context network that places every cluster of
the chosen solutions in one picture (each node scored by its mean cosine
to the other solutions' clusters, so tightly corresponding clusters rank
high), and a quantitative contingency summary with a chance-adjusted
pair-counting agreement score.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from semcontext.errors import SemContextError, UnknownSolutionError
from semcontext.index import SemanticMatrix
from semcontext.relate import ContextNetwork, assemble_network
from semcontext.solutions import ClusterSolution


def compare_solutions(
    solution_ids: list[str],
    S: SemanticMatrix,
    show: int = 50,
    layout_seed: int = 0,
) -> ContextNetwork:
    """Context network of all cluster entities of the named solutions."""
    if not solution_ids:
        raise UnknownSolutionError("no solution ids given")
    known = S.solutions()
    rows: list[int] = []
    groups: list[str] = []
    for sol in solution_ids:
        if sol not in known:
            raise UnknownSolutionError(f"unknown solution id {sol!r}")
        for entity in S.clusters_of(sol):
            rows.append(S.row(entity))
            groups.append(sol)

    rows_arr = np.array(rows, dtype=np.intp)
    vectors = S.vectors[rows_arr].astype(np.float64)
    norms = np.linalg.norm(vectors, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    unit = vectors / safe[:, None]
    sim = np.clip(unit @ unit.T, -1.0, 1.0)
    sim[norms == 0.0, :] = 0.0
    sim[:, norms == 0.0] = 0.0

    group_arr = np.array(groups)
    scores = np.zeros(len(rows))
    for i in range(len(rows)):
        other = group_arr != group_arr[i]
        scores[i] = float(sim[i, other].mean()) if other.any() else 0.0

    order = np.lexsort((rows_arr, -scores))[:show]
    echo = " ".join(f"[cluster:{s}]" for s in solution_ids)
    return assemble_network(
        S,
        rows_arr[order],
        scores[order],
        echo=echo,
        truncated=len(rows) > show,
        layout_seed=layout_seed,
    )


@dataclass
class OverlapSummary:
    """Contingency of two solutions over their shared articles."""

    row_ids: list[str]  # clusters of a
    col_ids: list[str]  # clusters of b
    matrix: np.ndarray  # int64 overlap counts
    score: float  # adjusted-for-chance pair-counting agreement in [-1, 1]
    best_matches: dict[str, str]  # a-cluster -> b-cluster with largest overlap
    shared_articles: int

    def to_rows(self) -> list[tuple[str, str, int]]:
        """Machine-readable nonzero cells: (a_cluster, b_cluster, count)."""
        out = []
        for i, a in enumerate(self.row_ids):
            for j, b in enumerate(self.col_ids):
                n = int(self.matrix[i, j])
                if n:
                    out.append((a, b, n))
        return out


def _comb2(x: np.ndarray | int):
    return x * (x - 1) // 2


def _adjusted_pair_agreement(matrix: np.ndarray) -> float:
    """Chance-adjusted pair-counting index from a contingency table."""
    n = int(matrix.sum())
    sum_cells = int(_comb2(matrix.astype(np.int64)).sum())
    sum_rows = int(_comb2(matrix.sum(axis=1).astype(np.int64)).sum())
    sum_cols = int(_comb2(matrix.sum(axis=0).astype(np.int64)).sum())
    total = _comb2(n)
    if total == 0:
        return 1.0
    expected = sum_rows * sum_cols / total
    maximum = (sum_rows + sum_cols) / 2
    if maximum == expected:
        return 1.0
    return float((sum_cells - expected) / (maximum - expected))


def solution_overlap(a: ClusterSolution, b: ClusterSolution) -> OverlapSummary:
    """Contingency table, best-match pairs and agreement score of two solutions."""
    shared = sorted(set(a.assignments) & set(b.assignments))
    if not shared:
        raise SemContextError(
            f"solutions {a.solution_id!r} and {b.solution_id!r} share no articles"
        )
    row_ids = sorted({a.assignments[aid] for aid in shared})
    col_ids = sorted({b.assignments[aid] for aid in shared})
    ri = {c: i for i, c in enumerate(row_ids)}
    ci = {c: i for i, c in enumerate(col_ids)}
    matrix = np.zeros((len(row_ids), len(col_ids)), dtype=np.int64)
    for aid in shared:
        matrix[ri[a.assignments[aid]], ci[b.assignments[aid]]] += 1

    best: dict[str, str] = {}
    for i, cid in enumerate(row_ids):
        best[cid] = col_ids[int(np.argmax(matrix[i]))]

    return OverlapSummary(
        row_ids=row_ids,
        col_ids=col_ids,
        matrix=matrix,
        score=_adjusted_pair_agreement(matrix),
        best_matches=best,
        shared_articles=len(shared),
    )


def overlap_report(summary: OverlapSummary, a_id: str, b_id: str) -> str:
    """Human-readable table for the CLI."""
    header = [f"{a_id}\\{b_id}"] + summary.col_ids
    lines = ["\t".join(header)]
    for i, cid in enumerate(summary.row_ids):
        lines.append("\t".join([cid] + [str(int(x)) for x in summary.matrix[i]]))
    lines.append("")
    lines.append(f"shared articles: {summary.shared_articles}")
    lines.append(f"agreement score: {summary.score:.6f}")
    lines.append("best matches: " + ", ".join(f"{k}->{v}" for k, v in sorted(summary.best_matches.items())))
    return "\n".join(lines)
