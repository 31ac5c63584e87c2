import numpy as np
import pytest

from marmann.classifier import (CompressionSet, empirical_error,
                                ideal_majority_set, nu_bounds_multiclass,
                                nu_exact_binary, nu_exact_binary_curve,
                                reconstruct, relabeled_error_at)
from marmann.dataset import Dataset
from marmann.nets import build_fft, candidate_scales
from marmann.pool import LabeledPool

from conftest import brute_force_nu, random_binary_pool


def cs(ids, labels):
    return CompressionSet(point_ids=np.asarray(ids), labels=np.asarray(labels))


def line_pool(xs, ys, n_labels=2):
    ds = Dataset.from_points(np.asarray(xs, dtype=float)[:, None])
    return LabeledPool(ds, np.asarray(ys, dtype=np.int64), n_labels=n_labels)


def test_reconstruct_single_entry_constant():
    pool = line_pool([0, 1, 2], [0, 1, 1])
    h = reconstruct(cs([1], [1]), pool.dataset)
    assert list(h.predict_pool()) == [1, 1, 1]


def test_reconstruct_empty_raises():
    ds = Dataset.from_points([[0.0]])
    with pytest.raises(ValueError):
        reconstruct(cs([], []), ds)


def test_compression_distinct_ids_enforced():
    with pytest.raises(ValueError):
        cs([0, 0], [1, 1])


def test_prediction_at_compression_point_returns_its_label():
    pool = line_pool([0, 10], [0, 1])
    h = reconstruct(cs([0, 1], [1, 0]), pool.dataset)  # relabeled on purpose
    assert list(h.predict_pool(np.array([0, 1]))) == [1, 0]


def test_nearest_rule_line():
    ds = Dataset.from_points([[0.0], [10.0], [3.0]])
    h = reconstruct(cs([0, 1], [0, 1]), ds)
    assert h.predict_pool(np.array([2]))[0] == 0  # 3 is nearer to 0
    assert h.predict(np.array([[3.0]]))[0] == 0


def test_nn_tie_breaks_to_earlier_entry():
    ds = Dataset.from_points([[0.0], [2.0], [1.0]])
    h = reconstruct(cs([1, 0], [1, 0]), ds)  # entry order: id1 first
    assert h.predict_pool(np.array([2]))[0] == 1


def test_empirical_error_full_pool_zero():
    pool = line_pool([0, 1, 5, 6], [0, 0, 1, 1])
    h = reconstruct(cs([0, 1, 2, 3], [0, 0, 1, 1]), pool.dataset)
    assert empirical_error(h, pool) == 0.0
    assert pool.ledger.total_requests == 0  # evaluation mode


def test_empirical_error_constant_classifier():
    pool = line_pool([0, 1, 2, 3], [1, 1, 1, 0])
    h = reconstruct(cs([0], [1]), pool.dataset)
    assert empirical_error(h, pool) == pytest.approx(0.25)


def test_nu_exact_simple():
    pool = line_pool([0.0, 0.5, 10.0], [1, 0, 1])
    assert nu_exact_binary(pool, 1.0) == pytest.approx(1 / 3)


def test_nu_all_same_label_zero():
    pool = line_pool([0, 1, 2], [1, 1, 1])
    for t in [0.5, 1.0, 5.0]:
        assert nu_exact_binary(pool, t) == 0.0


def test_nu_boundary_distance_exactly_t_not_blocking():
    pool = line_pool([0.0, 1.0], [0, 1])
    assert nu_exact_binary(pool, 1.0) == 0.0
    assert nu_exact_binary(pool, 1.0 + 1e-9) == pytest.approx(0.5)


def test_nu_matches_brute_force(rng):
    for _ in range(15):
        pool = random_binary_pool(rng, int(rng.integers(6, 12)))
        t = float(rng.random() * 2 + 0.1)
        assert nu_exact_binary(pool, t) == pytest.approx(brute_force_nu(pool, t))


def test_nu_curve_matches_pointwise(rng):
    pool = random_binary_pool(rng, 25)
    ts = pool.dataset.distinct_pairwise_distances()[::5]
    curve = nu_exact_binary_curve(pool, ts)
    for i, t in enumerate(ts):
        assert curve[i] == pytest.approx(nu_exact_binary(pool, float(t)))


def test_nu_monotone_in_t(rng):
    pool = random_binary_pool(rng, 30)
    ts = pool.dataset.distinct_pairwise_distances()
    curve = nu_exact_binary_curve(pool, ts)
    assert np.all(np.diff(curve) >= 0)


def test_nu_multiclass_unsupported():
    pool = line_pool([0, 1, 2], [0, 1, 2], n_labels=3)
    with pytest.raises(NotImplementedError):
        nu_exact_binary(pool, 1.0)


def test_nu_bounds_sandwich_binary(rng):
    for _ in range(10):
        pool = random_binary_pool(rng, 24)
        fft = build_fft(pool.dataset)
        for t in np.quantile(pool.dataset.distinct_pairwise_distances(),
                             [0.2, 0.5, 0.8]):
            lo, hi = nu_bounds_multiclass(pool, float(t), fft)
            exact = nu_exact_binary(pool, float(t))
            assert lo <= exact + 1e-12
            assert exact <= hi + 1e-12
            assert lo <= hi + 1e-12


def test_nu_bounds_separated_pool():
    pool = line_pool([0, 0.1, 5, 5.1], [0, 0, 1, 1])
    lo, hi = nu_bounds_multiclass(pool, 1.0)
    assert (lo, hi) == (0.0, 0.0)


def test_ideal_majority_basic_and_ties():
    # region labels {1,1,2} -> majority 1; tie {1,2} -> smaller id
    pool = line_pool([0, 0.1, 0.2, 5, 5.1], [1, 1, 2, 1, 2], n_labels=3)
    fft = build_fft(pool.dataset)
    got = ideal_majority_set(pool, fft, 1.0)
    by_id = dict(zip(got.point_ids.tolist(), got.labels.tolist()))
    assert set(by_id) == {0, 4}  # one net point per cluster
    assert by_id[0] == 1   # majority of {1,1,2}
    assert by_id[4] == 1   # tie {1,2} -> smallest label id


def test_ideal_majority_error_below_nu(rng):
    # the relabeled half-scale net never errs more than the separation value
    for _ in range(10):
        pool = random_binary_pool(rng, 30)
        fft = build_fft(pool.dataset)
        ts = candidate_scales(fft, pool.dataset)
        nus = nu_exact_binary_curve(pool, ts)
        for i in range(0, len(ts), 7):
            t = float(ts[i])
            h = reconstruct(ideal_majority_set(pool, fft, t), pool.dataset)
            assert empirical_error(h, pool) <= nus[i] + 1e-12


def test_relabeled_error_curve_matches_direct(rng):
    pool = random_binary_pool(rng, 24)
    fft = build_fft(pool.dataset)
    for t in np.quantile(pool.dataset.distinct_pairwise_distances(),
                         [0.15, 0.4, 0.7, 0.95]):
        h = reconstruct(ideal_majority_set(pool, fft, float(t)), pool.dataset)
        assert relabeled_error_at(pool, fft, float(t)) == \
            pytest.approx(empirical_error(h, pool))


def test_compression_self_consistency(rng):
    pool = random_binary_pool(rng, 20)
    fft = build_fft(pool.dataset)
    csx = ideal_majority_set(pool, fft, 1.0)
    h = reconstruct(csx, pool.dataset)
    assert np.array_equal(h.predict_pool(csx.point_ids), csx.labels)
