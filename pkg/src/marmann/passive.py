"""Full-label passive learners used as comparison baselines.

Both search every candidate scale with all labels in hand (label cost is
always the full pool) and return the scale minimizing the generalization
bound.  The relabeling variant scores each scale by the exact error of the
majority-relabeled half-scale net; the separation variant (binary only)
removes a minimum vertex cover of the blocking graph and nets the
survivors at the scale itself, keeping their original labels.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bounds import gb
from .classifier import (CompressionSet, NNClassifier, blocking_cover_binary,
                         empirical_error, ideal_majority_set,
                         nu_exact_binary_curve, reconstruct,
                         relabeled_error_curve)
from .nets import FarthestFirstIndex, build_fft, candidate_scales, greedy_net
from .pool import LabeledPool


@dataclass
class PassiveResult:
    t_star: float
    compression: CompressionSet
    classifier: NNClassifier
    emp_error: float
    gb_value: float
    labels_used: int  # always the full pool

    def as_dict(self) -> dict:
        return {
            "t_star": self.t_star,
            "compression_size": len(self.compression),
            "emp_error": self.emp_error,
            "gb_value": self.gb_value,
            "labels_used": self.labels_used,
        }


def passive_relabel(pool: LabeledPool, delta: float,
                    fft: FarthestFirstIndex | None = None) -> PassiveResult:
    """Best majority-relabeled net over the candidate scales.

    Scores gb(err(t), N(t/2), delta, m, 1) for every candidate scale, where
    err(t) is the exact empirical error of the relabeled half-scale net;
    ties go to the smallest scale.
    """
    if fft is None:
        fft = build_fft(pool.dataset)
    scales = candidate_scales(fft, pool.dataset)
    if len(scales) == 0:
        raise ValueError("no candidate scales")
    curve = relabeled_error_curve(pool, fft)
    half_sizes = fft.net_sizes_at(scales / 2.0)
    errs = curve[half_sizes - 1]
    vals = np.array([gb(float(errs[i]), int(half_sizes[i]), delta, pool.m, 1)
                     if half_sizes[i] < pool.m else np.inf
                     for i in range(len(scales))])
    best = int(np.argmin(vals))  # first minimum = smallest scale on ties
    t_star = float(scales[best])
    cs = ideal_majority_set(pool, fft, t_star)
    h = reconstruct(cs, pool.dataset)
    return PassiveResult(t_star=t_star, compression=cs, classifier=h,
                         emp_error=empirical_error(h, pool),
                         gb_value=float(vals[best]), labels_used=pool.m)


def passive_separation_binary(pool: LabeledPool, delta: float,
                              fft: FarthestFirstIndex | None = None
                              ) -> PassiveResult:
    """Best remove-then-net classifier over the candidate scales (binary).

    For each scale: remove a minimum vertex cover of the blocking graph,
    build an in-order greedy net of the survivors at the scale, keep the
    survivors' own labels, and score gb(nu(t), net size, delta, m, 1).
    """
    if pool.n_labels != 2:
        raise NotImplementedError("the separation baseline needs binary labels")
    if fft is None:
        fft = build_fft(pool.dataset)
    d = pool.dataset
    scales = candidate_scales(fft, d)
    if len(scales) == 0:
        raise ValueError("no candidate scales")
    nus = nu_exact_binary_curve(pool, scales)

    best_val, best_t = np.inf, None
    for i, t in enumerate(scales):
        t = float(t)
        survivors = _survivors(pool, t)
        net_ids = greedy_net(d, t, survivors)
        if len(net_ids) >= pool.m:
            continue
        val = gb(float(nus[i]), len(net_ids), delta, pool.m, 1)
        if val < best_val:
            best_val, best_t = val, t
    if best_t is None:
        raise ValueError("no scale produced a nontrivial survivor net")
    survivors = _survivors(pool, best_t)
    net_ids = greedy_net(d, best_t, survivors)
    cs = CompressionSet(point_ids=net_ids, labels=pool.peek_labels(net_ids))
    h = reconstruct(cs, d)
    return PassiveResult(t_star=best_t, compression=cs, classifier=h,
                         emp_error=empirical_error(h, pool),
                         gb_value=float(best_val), labels_used=pool.m)


def _survivors(pool: LabeledPool, t: float) -> np.ndarray:
    cover = blocking_cover_binary(pool, t)
    mask = np.ones(pool.m, dtype=bool)
    mask[cover] = False
    return np.flatnonzero(mask)
