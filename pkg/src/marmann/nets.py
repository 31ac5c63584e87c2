"""Deterministic t-nets at every scale via farthest-first traversal.

One O(m^2) traversal yields a permutation of the pool plus insertion radii;
every prefix of the permutation is a valid net, and the net for a requested
scale t is the shortest prefix whose covering radius is <= t.  This makes
the net-size curve N(t) a step function answerable in O(log m), and makes
it automatically non-increasing in t, so the candidate-scale set needs no
monotonicity repair.

An in-order greedy net builder is kept alongside purely as a cross-check
(two nets of the same scale have comparable sizes on doubling data) and to
back the separation-based passive learner.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset


@dataclass(frozen=True)
class FarthestFirstIndex:
    """Traversal order plus insertion radii; prefixes are nets at all scales.

    ``order[0]`` is the start point; each later entry maximizes the distance
    to the points already chosen (ties to the smallest id).  ``radii[k]`` is
    the distance of ``order[k]`` to the preceding prefix, with the
    convention ``radii[0] = +inf``; the array is non-increasing.  The prefix
    of length k is separated by > radii[k] strictly beyond the trivial k=1,
    and covers the pool within radii[k+1] (taken as 0 past the end).
    """

    order: np.ndarray
    radii: np.ndarray

    @property
    def m(self) -> int:
        return len(self.order)

    def net_size_at(self, t: float) -> int:
        """Size of the net returned by net_at(t)."""
        if t <= 0:
            raise ValueError("scale t must be positive")
        # smallest k >= 1 with radii[k] <= t (radii[m] := 0); radii[1:] is
        # non-increasing so count the entries strictly above t.
        tail = self.radii[1:]
        return 1 + int(len(tail) - np.searchsorted(tail[::-1], t, side="right"))

    def net_sizes_at(self, ts: np.ndarray) -> np.ndarray:
        ts = np.asarray(ts, dtype=np.float64)
        if np.any(ts <= 0):
            raise ValueError("scales must be positive")
        tail = self.radii[1:]
        return 1 + (len(tail) - np.searchsorted(tail[::-1], ts, side="right"))


@dataclass(frozen=True)
class NetView:
    """The net at one scale: an ordered id list that is t-separated and t-covering."""

    t: float
    net_points: np.ndarray

    @property
    def size(self) -> int:
        return len(self.net_points)


@dataclass(frozen=True)
class Partition:
    """Nearest-net-point regions; ties go to the earlier traversal position."""

    assignment: np.ndarray            # point id -> region index in [0, N)
    region_members: list[np.ndarray]  # inverse lists, ascending ids

    @property
    def size(self) -> int:
        return len(self.region_members)


def build_fft(d: Dataset, start: int = 0) -> FarthestFirstIndex:
    """Farthest-first traversal from ``start``; ties to the smallest id."""
    m = d.m
    if not 0 <= start < m:
        raise ValueError(f"start id {start} out of range [0, {m})")
    order = np.empty(m, dtype=np.intp)
    radii = np.empty(m, dtype=np.float64)
    order[0] = start
    radii[0] = np.inf
    # nearest distance of every point to the current prefix
    best = d.table[start].copy()
    for k in range(1, m):
        nxt = int(np.argmax(best))  # first occurrence = smallest id on ties
        order[k] = nxt
        radii[k] = best[nxt]
        np.minimum(best, d.table[nxt], out=best)
    return FarthestFirstIndex(order=order, radii=radii)


def net_at(idx: FarthestFirstIndex, t: float) -> NetView:
    """Shortest traversal prefix with covering radius <= t.

    A scale exactly equal to an insertion radius yields the smaller net
    (closed comparison).
    """
    k = idx.net_size_at(t)
    return NetView(t=t, net_points=idx.order[:k].copy())


def partition_at(idx: FarthestFirstIndex, d: Dataset, t: float) -> Partition:
    net = net_at(idx, t)
    return partition_for_net(net.net_points, d)


def partition_for_net(net_ids: np.ndarray, d: Dataset) -> Partition:
    """Assign every pool point to its nearest net point (ties: earliest)."""
    # argmin over rows ordered by traversal position; first occurrence wins,
    # which is exactly the earliest-in-traversal tie rule.
    assignment = np.argmin(d.table[net_ids], axis=0)
    members = [np.flatnonzero(assignment == i) for i in range(len(net_ids))]
    return Partition(assignment=assignment, region_members=members)


def candidate_scales(idx: FarthestFirstIndex, d: Dataset) -> np.ndarray:
    """The candidate-scale set: distinct pairwise distances whose net is not
    too large (N(t) + 1 <= m/2), ascending.

    With farthest-first nets the size curve is non-increasing by
    construction, so the monotonicity exclusion that would otherwise prune
    this set is vacuous; that is asserted rather than assumed.
    """
    m = d.m
    if m < 2:
        raise ValueError("need at least two points to enumerate scales")
    ts = d.distinct_pairwise_distances()
    if len(ts) == 0:
        return ts
    sizes = idx.net_sizes_at(ts)
    if np.any(np.diff(sizes) > 0):
        raise AssertionError("net-size curve must be non-increasing in t")
    keep = sizes + 1 <= m / 2
    return ts[keep]


def net_size_curve(idx: FarthestFirstIndex, d: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """(t, N(t)) over the candidate-scale set, for inspection dumps."""
    ts = candidate_scales(idx, d)
    return ts, idx.net_sizes_at(ts)


def greedy_net(d: Dataset, t: float, ids: np.ndarray | None = None) -> np.ndarray:
    """In-order greedy t-net: scan ids in order, keep points >= t from the
    kept set.  Kept points are t-separated and cover the scanned set within t.
    """
    if t <= 0:
        raise ValueError("scale t must be positive")
    pool = np.arange(d.m, dtype=np.intp) if ids is None else np.asarray(ids, dtype=np.intp)
    kept: list[int] = []
    for i in pool:
        row = d.table[i]
        if all(row[j] >= t for j in kept):
            kept.append(int(i))
    return np.asarray(kept, dtype=np.intp)
