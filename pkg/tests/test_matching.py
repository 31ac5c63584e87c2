import numpy as np
import pytest

from marmann.matching import (greedy_maximal_matching, hopcroft_karp,
                              minimum_vertex_cover)

from conftest import brute_force_min_cover


def random_bipartite(rng, n_left, n_right, p):
    adj = [sorted(int(v) for v in np.flatnonzero(rng.random(n_right) < p))
           for _ in range(n_left)]
    return adj


def as_edges(adj, n_left):
    return [(u, n_left + v) for u in range(len(adj)) for v in adj[u]]


def test_hopcroft_karp_simple():
    # perfect matching on a 2x2 cycle
    size, ml, mr = hopcroft_karp([[0, 1], [0]], 2)
    assert size == 2
    assert ml[1] == 0 and ml[0] == 1


def test_hopcroft_karp_empty():
    size, _, _ = hopcroft_karp([[], []], 3)
    assert size == 0


def test_matching_equals_brute_force_cover(rng):
    for trial in range(40):
        n_l = int(rng.integers(1, 8))
        n_r = int(rng.integers(1, 8))
        adj = random_bipartite(rng, n_l, n_r, 0.35)
        size, _, _ = hopcroft_karp(adj, n_r)
        edges = as_edges(adj, n_l)
        assert size == brute_force_min_cover(edges, n_l + n_r)


def test_koenig_cover_is_valid_and_minimum(rng):
    for trial in range(40):
        n_l = int(rng.integers(1, 9))
        n_r = int(rng.integers(1, 9))
        adj = random_bipartite(rng, n_l, n_r, 0.3)
        size, _, _ = hopcroft_karp(adj, n_r)
        left_cover, right_cover = minimum_vertex_cover(adj, n_r)
        assert len(left_cover) + len(right_cover) == size
        lset, rset = set(left_cover.tolist()), set(right_cover.tolist())
        for u in range(n_l):
            for v in adj[u]:
                assert u in lset or v in rset


def test_matching_deterministic(rng):
    adj = random_bipartite(rng, 12, 12, 0.3)
    a = hopcroft_karp(adj, 12)
    b = hopcroft_karp(adj, 12)
    assert a[0] == b[0]
    assert np.array_equal(a[1], b[1]) and np.array_equal(a[2], b[2])


def test_greedy_maximal_matching_order_and_bound(rng):
    edges = np.array([[0, 1], [0, 2], [1, 2], [3, 4]])
    assert greedy_maximal_matching(edges) == 2  # (0,1) then (3,4)
    assert greedy_maximal_matching(np.empty((0, 2), dtype=int)) == 0
    # any maximal matching is at least half a maximum one
    for _ in range(20):
        n_l = int(rng.integers(1, 8))
        n_r = int(rng.integers(1, 8))
        adj = random_bipartite(rng, n_l, n_r, 0.4)
        size, _, _ = hopcroft_karp(adj, n_r)
        greedy = greedy_maximal_matching(np.array(as_edges(adj, n_l) or
                                                  np.empty((0, 2), dtype=int)))
        assert greedy <= size <= 2 * greedy or size == 0
