import numpy as np
import pytest

from marmann.dataset import (Dataset, load_distance_matrix_csv,
                             load_labeled_points_csv, load_labels_csv,
                             write_points_csv)

from conftest import random_dataset


def test_distance_line_points():
    ds = Dataset.from_points([[0.0], [3.0]])
    assert ds.distance(0, 1) == 3.0
    assert ds.distance(1, 0) == 3.0
    assert ds.distance(0, 0) == 0.0


def test_distance_euclidean_345():
    ds = Dataset.from_points([[0.0, 0.0], [3.0, 4.0]])
    assert ds.distance(0, 1) == 5.0


def test_distance_out_of_range():
    ds = Dataset.from_points([[0.0], [1.0]])
    with pytest.raises(ValueError):
        ds.distance(0, 2)
    with pytest.raises(ValueError):
        ds.distance(-1, 0)


@pytest.mark.parametrize("metric,expected", [
    ("l2", np.sqrt(2.0)), ("l1", 2.0), ("linf", 1.0)])
def test_builtin_metrics(metric, expected):
    ds = Dataset.from_points([[0.0, 0.0], [1.0, 1.0]], metric=metric)
    assert ds.distance(0, 1) == pytest.approx(expected, rel=0, abs=0)


def test_distinct_pairwise_line():
    ds = Dataset.from_points([[0.0], [1.0], [2.0]])
    assert list(ds.distinct_pairwise_distances()) == [1.0, 2.0]


def test_distinct_pairwise_excludes_zero():
    ds = Dataset.from_points([[1.0], [1.0]])
    assert len(ds.distinct_pairwise_distances()) == 0


def test_distinct_pairwise_two_points():
    ds = Dataset.from_points([[0.0], [3.0]])
    assert list(ds.distinct_pairwise_distances()) == [3.0]


def test_diameter():
    assert Dataset.from_points([[0.0], [1.0], [5.0]]).diameter() == 5.0
    assert Dataset.from_points([[2.0]]).diameter() == 0.0
    assert Dataset.from_points([[0.0], [3.0]]).diameter() == 3.0


def test_table_symmetric_zero_diagonal(rng):
    ds = random_dataset(rng, 40, dim=3)
    assert np.array_equal(ds.table, ds.table.T)
    assert np.all(np.diag(ds.table) == 0.0)
    assert np.all(ds.table >= 0.0)


def test_distinct_strictly_increasing_contains_diameter(rng):
    ds = random_dataset(rng, 30)
    vals = ds.distinct_pairwise_distances()
    assert np.all(np.diff(vals) > 0)
    assert vals[-1] == ds.diameter()


def test_from_matrix_validation():
    good = np.array([[0.0, 1.0], [1.0, 0.0]])
    Dataset.from_matrix(good)
    with pytest.raises(ValueError):
        Dataset.from_matrix([[0.0, 1.0], [2.0, 0.0]])
    with pytest.raises(ValueError):
        Dataset.from_matrix([[1.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        Dataset.from_matrix([[0.0, -1.0], [-1.0, 0.0]])


def test_verify_metric_passes_on_euclidean(rng):
    random_dataset(rng, 25).verify_metric()


def test_verify_metric_catches_violation():
    bad = np.array([[0.0, 1.0, 5.0],
                    [1.0, 0.0, 1.0],
                    [5.0, 1.0, 0.0]])
    with pytest.raises(ValueError, match="triangle"):
        Dataset.from_matrix(bad).verify_metric()


def test_cross_distances_matches_table(rng):
    ds = random_dataset(rng, 20)
    ids = np.array([3, 7, 11])
    got = ds.cross_distances(ds.points, ids)
    assert np.allclose(got, ds.table[:, ids].T.T, atol=0)
    assert np.array_equal(got, ds.table[:, ids])


def test_cross_distances_requires_coordinates():
    ds = Dataset.from_matrix([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        ds.cross_distances(np.array([[0.5]]), np.array([0]))


def test_point_csv_roundtrip(tmp_path, rng):
    pts = rng.random((12, 3))
    labels = rng.integers(0, 3, size=12)
    path = tmp_path / "points.csv"
    write_points_csv(path, pts, labels)
    ds, got = load_labeled_points_csv(str(path))
    assert np.array_equal(got, labels)
    assert np.array_equal(ds.points, pts)


def test_matrix_csv_roundtrip(tmp_path, rng):
    ds = random_dataset(rng, 8)
    path = tmp_path / "matrix.csv"
    with open(path, "w") as fh:
        for row in ds.table:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")
    ds2 = load_distance_matrix_csv(str(path))
    assert np.array_equal(ds2.table, ds.table)


def test_labels_csv(tmp_path):
    path = tmp_path / "labels.csv"
    path.write_text("id,label\n0,1\n2,0\n1,1\n")
    labels = load_labels_csv(str(path), 3)
    assert list(labels) == [1, 1, 0]
    with pytest.raises(ValueError):
        load_labels_csv(str(path), 4)
