"""Immutable point sets over general metric spaces.

A :class:`Dataset` is either built from point coordinates plus one of the
built-in metrics (l2 / l1 / linf), or from a precomputed distance matrix.
Either way a dense symmetric distance table is materialized up front, so
everything downstream (net construction, scale enumeration, separation
oracles) works off exact, consistent float values.

The triangle inequality is the caller's responsibility: verifying it costs
O(m^3) and the learners never rely on it algorithmically.  An explicit
``verify_metric`` check is available for debugging.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

METRICS = ("l2", "l1", "linf")

# PointId is a plain int index in [0, m); ingestion order is identity.
PointId = int


def _pairwise_block(a: np.ndarray, b: np.ndarray, metric: str) -> np.ndarray:
    """Distances between rows of `a` and rows of `b` under a built-in metric."""
    diff = a[:, None, :] - b[None, :, :]
    if metric == "l2":
        return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    if metric == "l1":
        return np.abs(diff).sum(axis=2)
    if metric == "linf":
        return np.abs(diff).max(axis=2)
    raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")


def _pairwise_table(points: np.ndarray, metric: str, block: int = 256) -> np.ndarray:
    m = points.shape[0]
    table = np.empty((m, m), dtype=np.float64)
    for lo in range(0, m, block):
        hi = min(lo + block, m)
        table[lo:hi] = _pairwise_block(points[lo:hi], points, metric)
    return table


@dataclass(frozen=True)
class Dataset:
    """A fixed pool of points with an exact pairwise-distance table.

    Immutable after construction; all reads are safe concurrently.
    """

    table: np.ndarray
    points: Optional[np.ndarray] = None
    metric: Optional[str] = None
    _distinct: Optional[np.ndarray] = field(default=None, repr=False, compare=False)

    @property
    def m(self) -> int:
        return self.table.shape[0]

    @property
    def dim(self) -> Optional[int]:
        return None if self.points is None else self.points.shape[1]

    @classmethod
    def from_points(cls, points: Sequence[Sequence[float]] | np.ndarray,
                    metric: str = "l2") -> "Dataset":
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise ValueError("points must be a non-empty (m, d) array")
        if metric not in METRICS:
            raise ValueError(f"unknown metric {metric!r}; expected one of {METRICS}")
        table = _pairwise_table(pts, metric)
        return cls(table=table, points=pts, metric=metric)

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[float]] | np.ndarray) -> "Dataset":
        table = np.asarray(matrix, dtype=np.float64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ValueError("distance matrix must be square and non-empty")
        if not np.array_equal(table, table.T):
            raise ValueError("distance matrix must be exactly symmetric")
        if np.any(np.diag(table) != 0.0):
            raise ValueError("distance matrix must have a zero diagonal")
        if np.any(table < 0.0):
            raise ValueError("distances must be non-negative")
        return cls(table=table)

    def _check_id(self, i: int) -> None:
        if not 0 <= i < self.m:
            raise ValueError(f"point id {i} out of range [0, {self.m})")

    def distance(self, i: PointId, j: PointId) -> float:
        self._check_id(i)
        self._check_id(j)
        return float(self.table[i, j])

    def distinct_pairwise_distances(self) -> np.ndarray:
        """Sorted distinct positive pairwise distances (exact-float dedup).

        Exact equality is deliberate: net sizes and the candidate-scale set
        need one consistent total order over scales.
        """
        if self._distinct is not None:
            return self._distinct
        iu = np.triu_indices(self.m, k=1)
        vals = np.unique(self.table[iu])
        vals = vals[vals > 0.0]
        object.__setattr__(self, "_distinct", vals)
        return vals

    def diameter(self) -> float:
        return float(self.table.max())

    def cross_distances(self, queries: np.ndarray, ids: np.ndarray) -> np.ndarray:
        """Distances from external query coordinates to the given pool points.

        Only available for coordinate-backed datasets.
        """
        if self.points is None or self.metric is None:
            raise ValueError("dataset was built from a distance matrix; "
                             "external queries are not supported")
        q = np.asarray(queries, dtype=np.float64)
        if q.ndim == 1:
            q = q[:, None]
        out = np.empty((q.shape[0], len(ids)), dtype=np.float64)
        ref = self.points[np.asarray(ids, dtype=np.intp)]
        for lo in range(0, q.shape[0], 512):
            hi = min(lo + 512, q.shape[0])
            out[lo:hi] = _pairwise_block(q[lo:hi], ref, self.metric)
        return out

    def verify_metric(self, rtol: float = 1e-9) -> None:
        """O(m^3) triangle-inequality check (debug only).  Raises on violation."""
        t = self.table
        for k in range(self.m):
            slack = t - (t[:, k][:, None] + t[k][None, :])
            if np.any(slack > rtol * (1.0 + t)):
                i, j = np.unravel_index(np.argmax(slack), slack.shape)
                raise ValueError(
                    f"triangle inequality violated: d({i},{j})={t[i, j]} > "
                    f"d({i},{k})+d({k},{j})={t[i, k] + t[k, j]}")


def distance(d: Dataset, i: PointId, j: PointId) -> float:
    return d.distance(i, j)


def distinct_pairwise_distances(d: Dataset) -> np.ndarray:
    return d.distinct_pairwise_distances()


def diameter(d: Dataset) -> float:
    return d.diameter()


def load_labeled_points_csv(path: str) -> tuple[Dataset, np.ndarray]:
    """Read ``id,x1,...,xd,label`` rows; the label column is required."""
    rows = _read_csv_rows(path)
    ds, labels = _assemble_points(rows, has_label=True)
    assert labels is not None
    return ds, labels


def load_unlabeled_points_csv(path: str) -> Dataset:
    """Read ``id,x1,...,xd`` rows with no label column."""
    ds, _ = _assemble_points(_read_csv_rows(path), has_label=False)
    return ds


def load_distance_matrix_csv(path: str) -> Dataset:
    """Read an m x m distance matrix; validated symmetric with zero diagonal."""
    with open(path, newline="") as fh:
        rows = [[float(v) for v in row] for row in csv.reader(fh)
                if row and not row[0].lstrip().startswith("#")]
    return Dataset.from_matrix(np.asarray(rows, dtype=np.float64))


def load_labels_csv(path: str, m: int) -> np.ndarray:
    """Read ``id,label`` rows covering every id in [0, m) exactly once."""
    labels = np.full(m, -1, dtype=np.int64)
    for row in _read_csv_rows(path):
        if len(row) != 2:
            raise ValueError("label file rows must be `id,label`")
        i, y = int(float(row[0])), int(float(row[1]))
        if not 0 <= i < m:
            raise ValueError(f"label row id {i} out of range")
        labels[i] = y
    if np.any(labels < 0):
        raise ValueError("label file must cover every point id")
    return labels


def write_points_csv(path: str, points: np.ndarray,
                     labels: Optional[np.ndarray] = None) -> None:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i, row in enumerate(pts):
            out = [i] + [repr(float(v)) for v in row]
            if labels is not None:
                out.append(int(labels[i]))
            writer.writerow(out)


def _read_csv_rows(path: str) -> list[list[str]]:
    with open(path, newline="") as fh:
        rows = [row for row in csv.reader(fh)
                if row and not row[0].lstrip().startswith("#")]
    if rows:
        try:
            float(rows[0][0])
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise ValueError(f"no data rows in {path}")
    return rows


def _assemble_points(rows: list[list[str]],
                     has_label: bool) -> tuple[Dataset, Optional[np.ndarray]]:
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("ragged point file")
    stop = width - 1 if has_label else width
    if stop < 2:
        raise ValueError("point rows need at least `id,x1`")
    ids = [int(float(r[0])) for r in rows]
    if sorted(ids) != list(range(len(rows))):
        raise ValueError("point ids must be exactly 0..m-1")
    order = np.argsort(ids, kind="stable")
    coords = np.asarray([[float(v) for v in r[1:stop]] for r in rows])[order]
    labels = None
    if has_label:
        labels = np.asarray([int(float(r[-1])) for r in rows], dtype=np.int64)[order]
    return Dataset.from_points(coords), labels
