import numpy as np
import pytest

from marmann.dataset import Dataset
from marmann.pool import LabeledPool


@pytest.fixture
def rng():
    return np.random.default_rng(0xC0FFEE)


def random_dataset(rng, m, dim=2, metric="l2"):
    return Dataset.from_points(rng.random((m, dim)) * 4.0, metric=metric)


def random_binary_pool(rng, m, dim=2, flip=0.15):
    """Two Gaussian blobs with some flipped labels; continuous coordinates."""
    half = m // 2
    pts = np.concatenate([
        rng.normal(loc=0.0, scale=0.7, size=(half, dim)),
        rng.normal(loc=3.0, scale=0.7, size=(m - half, dim)),
    ])
    labels = np.concatenate([np.zeros(half, dtype=np.int64),
                             np.ones(m - half, dtype=np.int64)])
    flips = rng.random(m) < flip
    labels[flips] = 1 - labels[flips]
    return LabeledPool(Dataset.from_points(pts), labels, n_labels=2)


def brute_force_min_cover(edges, n_vertices):
    """Smallest vertex set touching every edge, by popcount-ordered search."""
    from itertools import combinations
    edges = [tuple(e) for e in edges]
    if not edges:
        return 0
    for k in range(1, n_vertices + 1):
        for cand in combinations(range(n_vertices), k):
            cset = set(cand)
            if all(u in cset or v in cset for u, v in edges):
                return k
    return n_vertices


def brute_force_nu(pool, t):
    """nu(t) by minimum cover of the strict blocking graph, brute force."""
    m = pool.m
    labels = pool.peek_labels()
    table = pool.dataset.table
    edges = [(i, j) for i in range(m) for j in range(i + 1, m)
             if labels[i] != labels[j] and table[i, j] < t]
    verts = sorted({v for e in edges for v in e})
    remap = {v: k for k, v in enumerate(verts)}
    edges = [(remap[u], remap[v]) for u, v in edges]
    return brute_force_min_cover(edges, len(verts)) / m
