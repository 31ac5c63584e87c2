"""Label-efficient compression-set construction at a given scale.

For a scale t, the compression points are the net of the pool at t/2, and
each net point's label is decided by a majority vote over a fixed budget of
uniformly sampled labels from its region.  Decisions are memoized per
(scale, region): once decided, a label is never recomputed, so repeated
requests cost no further queries and the full relabeled net is well defined
within a run.

The sampling budget is

    query_budget(m, delta) = ceil(18 * ln(4 m^3 / delta))

which makes every region's vote land within 1/6 of its true majority rate
simultaneously, except with probability delta / (2 m^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classifier import CompressionSet
from .dataset import Dataset
from .nets import (FarthestFirstIndex, Partition, build_fft, candidate_scales,
                   net_at, partition_for_net)
from .pool import LabeledPool


def query_budget(m: int, delta: float) -> int:
    """Per-region sampling budget; natural log, rounded up."""
    if m < 1:
        raise ValueError("m must be positive")
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0,1)")
    return math.ceil(18.0 * math.log(4.0 * m ** 3 / delta))


@dataclass
class ScaleEntry:
    """Memoized per-scale structures: the half-scale net, its partition, and
    the region labels decided so far (-1 = undecided)."""

    net_ids: np.ndarray
    partition: Partition
    decided: np.ndarray

    @property
    def n_regions(self) -> int:
        return len(self.net_ids)


@dataclass
class ScaleCache:
    """Exact-scale-keyed cache of ScaleEntry objects."""

    entries: dict[float, ScaleEntry] = field(default_factory=dict)

    def entry(self, t: float, fft: FarthestFirstIndex, d: Dataset) -> ScaleEntry:
        hit = self.entries.get(t)
        if hit is not None:
            return hit
        net = net_at(fft, t / 2)
        part = partition_for_net(net.net_points, d)
        entry = ScaleEntry(net_ids=net.net_points, partition=part,
                           decided=np.full(net.size, -1, dtype=np.int64))
        self.entries[t] = entry
        return entry


class MarmannState:
    """Run context for the active learner: pool, nets, cache, rng, delta.

    delta is restricted to (0, 1/4) and the pool must have at least
    max(6, alphabet) points, matching the regime in which the error and
    label-complexity guarantees are meaningful.
    """

    def __init__(self, pool: LabeledPool, delta: float,
                 seed: int | np.random.Generator = 0,
                 scales: np.ndarray | None = None):
        if not 0 < delta < 0.25:
            raise ValueError("delta must lie in (0, 1/4)")
        if pool.m < max(6, pool.n_labels):
            raise ValueError("pool too small: need m >= max(6, number of labels)")
        self.pool = pool
        self.delta = float(delta)
        self.fft = build_fft(pool.dataset)
        self.cache = ScaleCache()
        self.rng = (seed if isinstance(seed, np.random.Generator)
                    else np.random.default_rng(seed))
        self.scales = (candidate_scales(self.fft, pool.dataset)
                       if scales is None else np.asarray(scales, dtype=np.float64))
        self.budget = query_budget(pool.m, self.delta)

    @property
    def m(self) -> int:
        return self.pool.m

    def net_size(self, t: float) -> int:
        return self.fft.net_size_at(t)

    def decide_region(self, entry: ScaleEntry, i: int,
                      rng: np.random.Generator | None = None,
                      count_labels: bool = True) -> int:
        """Decide region i's label by a budget-sized majority vote (memoized)."""
        y = entry.decided[i]
        if y >= 0:
            return int(y)
        members = entry.partition.region_members[i]
        rng = self.rng if rng is None else rng
        picks = self.pool.sample_from_region(members, self.budget, rng)
        if count_labels:
            votes = self.pool.query_labels(picks)
        else:
            votes = self.pool.peek_labels(picks)
        y = int(np.bincount(votes, minlength=self.pool.n_labels).argmax())
        entry.decided[i] = y
        return y


def generate_nn_set(t: float, region_indices: np.ndarray | list[int],
                    delta: float, state: MarmannState) -> CompressionSet:
    """Return (net point, decided label) pairs for the requested regions of
    the half-scale partition, deciding fresh regions by sampled majority.

    ``delta`` must match the run delta: the budget is fixed per run.
    """
    if t <= 0:
        raise ValueError("scale t must be positive")
    if delta != state.delta:
        raise ValueError("delta must match the run state")
    entry = state.cache.entry(t, state.fft, state.pool.dataset)
    idx = np.unique(np.asarray(region_indices, dtype=np.intp))
    if idx.size == 0:
        raise ValueError("need at least one region index")
    if idx[0] < 0 or idx[-1] >= entry.n_regions:
        raise ValueError("region index out of range")
    labels = np.array([state.decide_region(entry, int(i)) for i in idx],
                      dtype=np.int64)
    return CompressionSet(point_ids=entry.net_ids[idx], labels=labels)


def full_nn_set(t: float, state: MarmannState) -> CompressionSet:
    """The compression set over every region at scale t."""
    entry = state.cache.entry(t, state.fft, state.pool.dataset)
    return generate_nn_set(t, np.arange(entry.n_regions), state.delta, state)
