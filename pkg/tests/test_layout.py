"""Layout: determinism, bounds, separation, soft monotonicity."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from semcontext.layout import MIN_SEPARATION, layout_network


def _sim_from_points(points: np.ndarray) -> np.ndarray:
    unit = points / np.linalg.norm(points, axis=1, keepdims=True)
    return np.clip(unit @ unit.T, -1.0, 1.0)


def test_single_node_centered():
    pos = layout_network(np.array([[1.0]]), seed=0)
    assert pos.shape == (1, 2)
    assert pos[0].tolist() == [0.5, 0.5]


def test_three_node_geometry():
    sim = np.array(
        [
            [1.0, 0.9, 0.1],
            [0.9, 1.0, 0.1],
            [0.1, 0.1, 1.0],
        ]
    )
    pos = layout_network(sim, seed=0)
    d12 = np.linalg.norm(pos[0] - pos[1])
    d13 = np.linalg.norm(pos[0] - pos[2])
    d23 = np.linalg.norm(pos[1] - pos[2])
    assert d12 < d13 and d12 < d23


def test_deterministic_for_fixed_seed():
    rng = np.random.default_rng(3)
    sim = _sim_from_points(rng.standard_normal((15, 6)))
    a = layout_network(sim, seed=7)
    b = layout_network(sim, seed=7)
    assert (a == b).all()


def test_two_nodes():
    pos = layout_network(np.array([[1.0, 0.2], [0.2, 1.0]]), seed=0)
    assert pos.shape == (2, 2)
    assert np.linalg.norm(pos[0] - pos[1]) > MIN_SEPARATION


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_bounds_and_min_separation(seed):
    rng = np.random.default_rng(seed)
    n = 40
    sim = _sim_from_points(rng.standard_normal((n, 5)))
    pos = layout_network(sim, seed=seed)
    assert (pos >= 0.0).all() and (pos <= 1.0).all()
    dists = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=2)
    np.fill_diagonal(dists, 1.0)
    assert dists.min() >= MIN_SEPARATION


def test_min_separation_with_duplicate_nodes():
    # identical vectors -> target distance 0; separation must still hold
    sim = np.ones((6, 6))
    pos = layout_network(sim, seed=4)
    dists = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=2)
    np.fill_diagonal(dists, 1.0)
    assert dists.min() >= MIN_SEPARATION


def _monotonicity(sim: np.ndarray, pos: np.ndarray) -> tuple[int, int]:
    dists = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=2)
    total = satisfied = 0
    for i, j, k in itertools.permutations(range(len(sim)), 3):
        if sim[i, j] >= sim[i, k] + 0.2:
            total += 1
            if dists[i, j] < dists[i, k]:
                satisfied += 1
    return satisfied, total


@pytest.mark.parametrize("seed", [0, 1, 2, 3, 4, 5])
def test_soft_monotonicity_on_clustered_instances(seed):
    # Cosine structure like real context networks: a few loose groups.
    rng = np.random.default_rng(seed)
    centers = rng.standard_normal((3, 8)) * 3.0
    points = np.vstack([c + rng.standard_normal((8, 8)) for c in centers])
    sim = _sim_from_points(points)
    satisfied, total = _monotonicity(sim, layout_network(sim, seed=seed))
    assert total > 0
    assert satisfied / total >= 0.90


def test_soft_monotonicity_on_query_networks(toy_index):
    from semcontext.relate import _pairwise_cosine, answer_query

    for query in ("dark energy", "magnetic flux", "[author:smak j]", "dwarf novae"):
        net = answer_query(toy_index, query, show=20)
        rows = [toy_index.row(n.entity) for n in net.nodes]
        sim = _pairwise_cosine(toy_index.vectors[rows])
        pos = np.array([[n.x, n.y] for n in net.nodes])
        satisfied, total = _monotonicity(sim, pos)
        if total:
            assert satisfied / total >= 0.90, query
