"""Compression sets, the reconstructed 1-NN rule, and separation oracles.

A compression set is an ordered list of (point id, label) pairs whose
labels may differ from the hidden pool labels; the classifier it
reconstructs predicts by nearest compression point, ties to the earliest
entry.  The separation value nu(t) -- the smallest fraction of points
whose removal leaves differently-labeled points at least t apart -- is
computed exactly for binary labels via minimum vertex cover (Koenig), and
sandwiched for multiclass.  A pair at distance exactly t does NOT block:
the separation definition keeps pairs at distance >= t.

The oracles read hidden labels in evaluation mode (never ledger-counted);
they exist for baselines, audits and tests, not for the active learner.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .matching import greedy_maximal_matching, hopcroft_karp, minimum_vertex_cover
from .nets import FarthestFirstIndex, net_at, partition_for_net
from .pool import LabeledPool


@dataclass(frozen=True)
class CompressionSet:
    """Ordered (point id, label) pairs; ids distinct, labels possibly changed."""

    point_ids: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        if len(self.point_ids) != len(self.labels):
            raise ValueError("ids and labels must align")
        if len(np.unique(self.point_ids)) != len(self.point_ids):
            raise ValueError("compression point ids must be distinct")

    def __len__(self) -> int:
        return len(self.point_ids)


@dataclass(frozen=True)
class NNClassifier:
    """1-NN rule reconstructed from a compression set over a dataset."""

    compression: CompressionSet
    dataset: Dataset

    def predict_pool(self, ids: np.ndarray | None = None) -> np.ndarray:
        """Predict pool points by id (all of them when ids is None)."""
        cs = self.compression
        block = self.dataset.table[cs.point_ids]
        cols = block if ids is None else block[:, np.asarray(ids, dtype=np.intp)]
        nearest = np.argmin(cols, axis=0)  # first occurrence = earliest entry
        return cs.labels[nearest]

    def predict(self, queries: np.ndarray) -> np.ndarray:
        """Predict external coordinates (coordinate-backed datasets only)."""
        dists = self.dataset.cross_distances(queries, self.compression.point_ids)
        return self.compression.labels[np.argmin(dists, axis=1)]


def reconstruct(cs: CompressionSet, d: Dataset) -> NNClassifier:
    if len(cs) == 0:
        raise ValueError("cannot reconstruct a classifier from an empty set")
    return NNClassifier(compression=cs, dataset=d)


def empirical_error(h: NNClassifier, pool: LabeledPool) -> float:
    """Exact misclassified fraction against the hidden labels (evaluation mode)."""
    pred = h.predict_pool()
    return float(np.mean(pred != pool.peek_labels()))


# ---------------------------------------------------------------------------
# blocking graphs and separation values
# ---------------------------------------------------------------------------

def _binary_sides(pool: LabeledPool) -> tuple[np.ndarray, np.ndarray]:
    labels = pool.peek_labels()
    present = np.unique(labels)
    if pool.n_labels != 2 or len(present) > 2:
        raise NotImplementedError("exact separation values need binary labels")
    return np.flatnonzero(labels == 0), np.flatnonzero(labels == 1)


def _blocking_adjacency(pool: LabeledPool, t: float
                        ) -> tuple[list[list[int]], int, np.ndarray, np.ndarray]:
    """Left adjacency of the strict blocking graph at scale t (binary pools)."""
    side0, side1 = _binary_sides(pool)
    cross = pool.dataset.table[np.ix_(side0, side1)]
    mask = cross < t
    adj = [list(np.flatnonzero(mask[i])) for i in range(len(side0))]
    return adj, len(side1), side0, side1


def nu_exact_binary(pool: LabeledPool, t: float) -> float:
    """Exact smallest nu such that the pool is (nu, t)-separated (binary)."""
    if t <= 0:
        raise ValueError("scale t must be positive")
    adj, n_right, _, _ = _blocking_adjacency(pool, t)
    size, _, _ = hopcroft_karp(adj, n_right)
    return size / pool.m


def nu_exact_binary_curve(pool: LabeledPool, ts: np.ndarray) -> np.ndarray:
    """nu(t) for an ascending grid of scales.

    The minimum cover size is a non-decreasing step function of t with few
    distinct values, so it is filled in by divide-and-conquer: whenever the
    endpoints of an index range agree, the whole range is constant.
    """
    ts = np.asarray(ts, dtype=np.float64)
    if len(ts) == 0:
        return np.zeros(0)
    if np.any(np.diff(ts) < 0):
        raise ValueError("scales must be ascending")
    side0, side1 = _binary_sides(pool)
    cross = pool.dataset.table[np.ix_(side0, side1)]
    n_right = len(side1)

    def cover_size(t: float) -> int:
        mask = cross < t
        adj = [list(np.flatnonzero(mask[i])) for i in range(len(side0))]
        return hopcroft_karp(adj, n_right)[0]

    sizes = np.full(len(ts), -1, dtype=np.int64)

    def fill(lo: int, hi: int, vlo: int, vhi: int) -> None:
        sizes[lo] = vlo
        sizes[hi] = vhi
        if vlo == vhi:
            sizes[lo:hi + 1] = vlo
            return
        if hi - lo <= 1:
            return
        mid = (lo + hi) // 2
        vmid = cover_size(float(ts[mid]))
        fill(lo, mid, vlo, vmid)
        fill(mid, hi, vmid, vhi)

    fill(0, len(ts) - 1, cover_size(float(ts[0])), cover_size(float(ts[-1])))
    return sizes / pool.m


def blocking_cover_binary(pool: LabeledPool, t: float) -> np.ndarray:
    """A minimum vertex cover of the blocking graph, as pool ids (binary)."""
    adj, n_right, side0, side1 = _blocking_adjacency(pool, t)
    left_cover, right_cover = minimum_vertex_cover(adj, n_right)
    return np.sort(np.concatenate([side0[left_cover], side1[right_cover]]))


def nu_bounds_multiclass(pool: LabeledPool, t: float,
                         fft: FarthestFirstIndex | None = None
                         ) -> tuple[float, float]:
    """Sandwich for nu(t) valid for any label alphabet.

    Lower bound: the misclassified mass of the majority-relabeled net at
    half the scale (its regions have diameter <= t).  Upper bound: twice a
    greedy maximal matching of the blocking graph, a 2-approximation of the
    minimum vertex cover.
    """
    if t <= 0:
        raise ValueError("scale t must be positive")
    if fft is None:
        from .nets import build_fft
        fft = build_fft(pool.dataset)
    lower = 1.0 - _majority_mass_at(pool, fft, t) / pool.m

    labels = pool.peek_labels()
    iu, ju = np.triu_indices(pool.m, k=1)
    mask = (pool.dataset.table[iu, ju] < t) & (labels[iu] != labels[ju])
    edges = np.stack([iu[mask], ju[mask]], axis=1)  # lexicographic by construction
    upper = 2.0 * greedy_maximal_matching(edges) / pool.m
    return lower, min(upper, 1.0)


# ---------------------------------------------------------------------------
# majority-relabeled nets (the ideal compression set)
# ---------------------------------------------------------------------------

def ideal_majority_set(pool: LabeledPool, fft: FarthestFirstIndex,
                       t: float) -> CompressionSet:
    """Net points at half the scale, labeled by their region's majority
    hidden label (ties to the smallest label id).  Evaluation-mode oracle.
    """
    if t <= 0:
        raise ValueError("scale t must be positive")
    net = net_at(fft, t / 2)
    part = partition_for_net(net.net_points, pool.dataset)
    labels = pool.peek_labels()
    maj = np.empty(net.size, dtype=np.int64)
    for i, members in enumerate(part.region_members):
        maj[i] = np.bincount(labels[members], minlength=pool.n_labels).argmax()
    return CompressionSet(point_ids=net.net_points, labels=maj)


def _majority_mass_at(pool: LabeledPool, fft: FarthestFirstIndex, t: float) -> int:
    """Sum over regions of Par(t/2) of the majority-label member count."""
    k = fft.net_size_at(t / 2)
    return int(majority_mass_curve(pool, fft)[k - 1])


def majority_mass_curve(pool: LabeledPool, fft: FarthestFirstIndex) -> np.ndarray:
    """For every traversal prefix length k, the total count of points that
    agree with their region's majority label under the prefix-net partition.

    Computed in one incremental O(m^2) pass; entry k-1 corresponds to the
    net {order[0..k)}.  The relabeled-net empirical error at scale t is
    ``1 - curve[N(t/2) - 1] / m``.  Memoized on the pool per index object.
    """
    cache: list[tuple[FarthestFirstIndex, np.ndarray]]
    cache = pool.__dict__.setdefault("_mass_curves", [])
    for ref, hit in cache:
        if ref is fft:
            return hit
    d = pool.dataset
    labels = pool.peek_labels()
    m, n_lab = pool.m, pool.n_labels
    order = fft.order
    assign = np.zeros(m, dtype=np.int64)
    best = d.table[order[0]].copy()
    counts = np.zeros((m, n_lab), dtype=np.int64)  # region x label
    counts[0] = np.bincount(labels, minlength=n_lab)
    region_max = np.zeros(m, dtype=np.int64)
    region_max[0] = counts[0].max()
    curve = np.empty(m, dtype=np.int64)
    curve[0] = region_max[0]
    total = int(region_max[0])
    for k in range(1, m):
        c = order[k]
        moved = np.flatnonzero(d.table[c] < best)  # strict: ties stay earlier
        best[moved] = d.table[c][moved]
        touched = np.unique(assign[moved])
        if moved.size:
            dec = np.bincount(assign[moved] * n_lab + labels[moved],
                              minlength=m * n_lab).reshape(m, n_lab)
            counts -= dec
            counts[k] = np.bincount(labels[moved], minlength=n_lab)
            assign[moved] = k
        for r in np.concatenate([touched, [k]]):
            total -= region_max[r]
            region_max[r] = counts[r].max()
            total += region_max[r]
        curve[k] = total
    cache.append((fft, curve))
    return curve


def relabeled_error_curve(pool: LabeledPool, fft: FarthestFirstIndex) -> np.ndarray:
    """Empirical error of the majority-relabeled prefix net, per prefix length."""
    return 1.0 - majority_mass_curve(pool, fft) / pool.m


def relabeled_error_at(pool: LabeledPool, fft: FarthestFirstIndex, t: float) -> float:
    """Exact empirical error of the ideal majority set at scale t."""
    return 1.0 - _majority_mass_at(pool, fft, t) / pool.m
