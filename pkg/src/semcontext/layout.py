"""Deterministic 2-D placement of context-network nodes.

Stress-reduction MDS on dissimilarity 1 - cosine: a classical-scaling
start plus seeded random restarts, each refined by majorization steps,
keeping the lowest-stress result. Positions land in the unit square with
a minimum pairwise separation so labels stay legible.
"""

from __future__ import annotations

import numpy as np

MIN_SEPARATION = 0.01
_MARGIN = 0.05
_ITERATIONS = 100
_RESTARTS = 1
_STRESS_TOL = 1e-6


def _smacof(positions: np.ndarray, targets: np.ndarray, max_iter: int = _ITERATIONS) -> tuple[np.ndarray, float]:
    """Majorization steps (uniform weights) until stress stalls."""
    n = len(positions)
    pos = positions
    stress = np.inf
    for _ in range(max_iter):
        gram = pos @ pos.T
        sq = np.diagonal(gram)
        d2 = sq[:, None] + sq[None, :] - 2.0 * gram
        dist = np.sqrt(np.maximum(d2, 0.0, out=d2))
        new_stress = float(((dist - targets) ** 2).sum()) / 2.0
        if np.isfinite(stress) and stress - new_stress <= _STRESS_TOL * max(stress, 1e-30):
            stress = new_stress
            break
        stress = new_stress
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dist > 0, targets / dist, 0.0)
        np.fill_diagonal(ratio, 0.0)
        pos = (-(ratio @ pos) + ratio.sum(axis=1)[:, None] * pos) / n
    return pos, stress


def _classical_start(targets: np.ndarray) -> np.ndarray:
    """Torgerson double-centering start from the target distances."""
    n = len(targets)
    j = np.eye(n) - np.full((n, n), 1.0 / n)
    b = -0.5 * j @ (targets**2) @ j
    evals, evecs = np.linalg.eigh(b)
    order = np.argsort(evals)[::-1][:2]
    top = np.clip(evals[order], 0.0, None)
    return evecs[:, order] * np.sqrt(top)[None, :]


def _spread_apart(positions: np.ndarray, min_dist: float, seed: int) -> np.ndarray:
    """Push node pairs closer than ``min_dist`` apart; deterministic."""
    rng = np.random.default_rng(seed + 0x5EED)
    pos = positions.copy()
    n = len(pos)
    for _ in range(100):
        dist = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=2)
        iu = np.triu_indices(n, k=1)
        close = dist[iu] < min_dist
        if not close.any():
            break
        for i, j in zip(iu[0][close], iu[1][close]):
            gap = pos[i] - pos[j]  # fresh: earlier pushes already moved nodes
            d = float(np.linalg.norm(gap))
            if d >= min_dist:
                continue
            if d == 0.0:
                angle = rng.uniform(0, 2 * np.pi)
                push = (0.5 * min_dist + 1e-6) * np.array([np.cos(angle), np.sin(angle)])
            else:
                push = (0.5 * (min_dist - d) + 1e-6) * gap / d
            pos[i] += push
            pos[j] -= push
        np.clip(pos, 0.0, 1.0, out=pos)
    return pos


def layout_network(similarities: np.ndarray, seed: int = 0) -> np.ndarray:
    """Positions in [0,1]^2 for nodes with pairwise cosine ``similarities``.

    Higher-cosine pairs sit closer. Deterministic for fixed inputs and
    seed; a single node is centered.
    """
    sim = np.asarray(similarities, dtype=np.float64)
    n = sim.shape[0]
    if sim.shape != (n, n):
        raise ValueError("similarities must be a square matrix")
    if n == 0:
        return np.zeros((0, 2))
    if n == 1:
        return np.array([[0.5, 0.5]])

    targets = np.clip(1.0 - 0.5 * (sim + sim.T), 0.0, 2.0)
    np.fill_diagonal(targets, 0.0)

    rng = np.random.default_rng(seed)
    starts = [_classical_start(targets)] + [rng.random((n, 2)) for _ in range(_RESTARTS)]
    best_pos = None
    best_stress = np.inf
    for start in starts:
        pos, stress = _smacof(start, targets)
        if stress < best_stress - 1e-12:
            best_stress = stress
            best_pos = pos
    pos = best_pos

    # Uniform scale into the unit square (aspect ratio preserved).
    center = (pos.max(axis=0) + pos.min(axis=0)) / 2
    half_range = float((pos.max(axis=0) - pos.min(axis=0)).max()) / 2
    span = 0.5 - _MARGIN
    if half_range > 0:
        pos = 0.5 + (pos - center) * (span / half_range)
    else:
        pos = np.full((n, 2), 0.5)

    return _spread_apart(pos, MIN_SEPARATION, seed)
