import numpy as np
import pytest

from marmann.dataset import Dataset
from marmann.pool import LabeledPool


def small_pool():
    ds = Dataset.from_points([[0.0], [1.0], [2.0], [3.0]])
    return LabeledPool(ds, np.array([0, 0, 1, 1]), n_labels=2)


def test_query_counts_total_and_unique():
    pool = small_pool()
    y1 = pool.query_label(2)
    y2 = pool.query_label(2)
    assert y1 == y2 == 1
    assert pool.ledger.total_requests == 2
    assert pool.ledger.unique_queries == 1


def test_fresh_pool_single_query():
    pool = small_pool()
    pool.query_label(0)
    assert pool.ledger.unique_queries == 1
    assert list(pool.ledger.queried_set) == [0]


def test_unique_never_exceeds_m(rng):
    pool = small_pool()
    ids = rng.integers(0, pool.m, size=200)
    pool.query_labels(ids)
    assert pool.ledger.unique_queries <= pool.m
    assert pool.ledger.total_requests == 200


def test_query_out_of_range():
    pool = small_pool()
    with pytest.raises(ValueError):
        pool.query_label(4)


def test_peek_bypasses_ledger():
    pool = small_pool()
    pool.peek_label(0)
    pool.peek_labels()
    pool.peek_labels(np.array([1, 2]))
    assert pool.ledger.total_requests == 0
    assert pool.ledger.unique_queries == 0


def test_labels_read_only():
    pool = small_pool()
    with pytest.raises(ValueError):
        pool.hidden_labels[0] = 9


def test_alphabet_validation():
    ds = Dataset.from_points([[0.0], [1.0]])
    with pytest.raises(ValueError):
        LabeledPool(ds, np.array([0, 3]), n_labels=2)  # label exceeds alphabet
    with pytest.raises(ValueError):
        LabeledPool(ds, np.array([0, 1]), n_labels=3)  # alphabet > m


def test_sample_from_region_single_point(rng):
    pool = small_pool()
    got = pool.sample_from_region(np.array([2]), 5, rng)
    assert list(got) == [2] * 5


def test_sample_from_region_empty_raises(rng):
    pool = small_pool()
    with pytest.raises(ValueError):
        pool.sample_from_region(np.array([], dtype=int), 1, rng)


def test_sampling_deterministic_under_seed():
    pool = small_pool()
    a = pool.sample_from_region(np.arange(4), 64, np.random.default_rng(5))
    b = pool.sample_from_region(np.arange(4), 64, np.random.default_rng(5))
    assert np.array_equal(a, b)


def test_region_sampling_uniform_marginal():
    pool = small_pool()
    rng = np.random.default_rng(11)
    draws = pool.sample_from_region(np.array([1, 3]), 40_000, rng)
    freq = np.mean(draws == 1)
    # binomial(40000, 1/2): three sigma is ~0.0075
    assert abs(freq - 0.5) < 0.01


def test_sample_labeled_pair_counts_one_query(rng):
    pool = small_pool()
    i, y = pool.sample_labeled_pair(rng)
    assert pool.ledger.total_requests == 1
    assert y == pool.peek_label(i)


def test_single_point_pool_pair(rng):
    ds = Dataset.from_points([[0.0]])
    pool = LabeledPool(ds, np.array([0]), n_labels=1)
    i, y = pool.sample_labeled_pair(rng)
    assert (i, y) == (0, 0)
