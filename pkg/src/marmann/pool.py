"""The hidden labeled sample and its audited query ledger.

Active learners see only the unlabeled dataset; every label they obtain
goes through :meth:`LabeledPool.query_label` (or its batch variant), which
the ledger counts.  Evaluation-time reads -- computing an empirical error
for reporting, building reference oracles -- use :meth:`peek_label` /
:attr:`hidden_labels` and never touch the ledger, so the label-complexity
audit reflects algorithmic queries only.

Both sampling helpers draw uniformly WITH replacement: the error-estimation
analysis treats draws as i.i.d. Bernoulli trials, and with-replacement
keeps that exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dataset import Dataset


@dataclass
class QueryLedger:
    """Counts label requests; unique counts saturate at the pool size."""

    total_requests: int = 0
    _queried: np.ndarray | None = None

    def _mask(self, m: int) -> np.ndarray:
        if self._queried is None:
            self._queried = np.zeros(m, dtype=bool)
        return self._queried

    @property
    def unique_queries(self) -> int:
        return 0 if self._queried is None else int(self._queried.sum())

    @property
    def queried_set(self) -> np.ndarray:
        return (np.empty(0, dtype=np.intp) if self._queried is None
                else np.flatnonzero(self._queried))

    def record(self, ids: np.ndarray, m: int) -> None:
        self.total_requests += int(np.size(ids))
        self._mask(m)[ids] = True


class LabeledPool:
    """Dataset plus hidden labels (dense ints 0..n_labels-1) and a ledger."""

    def __init__(self, dataset: Dataset, labels: np.ndarray,
                 n_labels: int | None = None):
        labels = np.array(labels, dtype=np.int64, copy=True)
        if labels.shape != (dataset.m,):
            raise ValueError("need exactly one label per point")
        if labels.min() < 0:
            raise ValueError("labels must be non-negative ints")
        self.dataset = dataset
        self.hidden_labels = labels
        self.hidden_labels.setflags(write=False)
        self.n_labels = int(labels.max()) + 1 if n_labels is None else int(n_labels)
        if self.n_labels <= labels.max():
            raise ValueError("n_labels must exceed the largest label id")
        if self.n_labels > dataset.m:
            raise ValueError("label alphabet larger than the pool is unsupported")
        self.ledger = QueryLedger()

    @property
    def m(self) -> int:
        return self.dataset.m

    # -- audited reads -------------------------------------------------
    def query_label(self, i: int) -> int:
        if not 0 <= i < self.m:
            raise ValueError(f"point id {i} out of range [0, {self.m})")
        self.ledger.record(np.asarray([i]), self.m)
        return int(self.hidden_labels[i])

    def query_labels(self, ids: np.ndarray) -> np.ndarray:
        ids = np.asarray(ids, dtype=np.intp)
        if ids.size and (ids.min() < 0 or ids.max() >= self.m):
            raise ValueError("point id out of range")
        self.ledger.record(ids, self.m)
        return self.hidden_labels[ids]

    # -- evaluation-mode reads (not ledger-counted) ---------------------
    def peek_label(self, i: int) -> int:
        return int(self.hidden_labels[i])

    def peek_labels(self, ids: np.ndarray | None = None) -> np.ndarray:
        return self.hidden_labels if ids is None else self.hidden_labels[ids]

    # -- sampling --------------------------------------------------------
    def sample_from_region(self, region: np.ndarray, count: int,
                           rng: np.random.Generator) -> np.ndarray:
        """``count`` ids drawn uniformly i.i.d. with replacement from the region."""
        region = np.asarray(region, dtype=np.intp)
        if region.size == 0:
            raise ValueError("cannot sample from an empty region")
        if count < 1:
            raise ValueError("count must be >= 1")
        return region[rng.integers(0, region.size, size=count)]

    def sample_labeled_pair(self, rng: np.random.Generator) -> tuple[int, int]:
        """One uniform pool point with its label; the label query is counted."""
        i = int(rng.integers(0, self.m))
        return i, self.query_label(i)

    def sample_pairs(self, count: int, rng: np.random.Generator
                     ) -> tuple[np.ndarray, np.ndarray]:
        """Batch of uniform (id, label) draws; counted like repeated single draws."""
        ids = rng.integers(0, self.m, size=count)
        return ids, self.query_labels(ids)
