"""Generalization-bound arithmetic for compression-based nearest neighbors.

All logarithms are natural.  The headline quantity is

    gb(eps, N, delta, m, k) = a*eps + (2/3)*L/(m-N) + (3/sqrt 2)*sqrt(a*eps*L/(m-N))

with a = m/(m-N) and L = (N+1)*ln(m*k) + ln(1/delta); k is the size of the
side-information alphabet attached to the compression set (k=1 when labels
are kept verbatim).  The scale-local form g_value(eps, phi) satisfies
gb = a * g_value exactly when phi is the per-sample complexity phi(t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .nets import FarthestFirstIndex
from .pool import LabeledPool


@dataclass(frozen=True)
class BoundParams:
    epsilon: float
    n_compression: int
    delta: float
    m: int
    k_alphabet: int = 1

    def __post_init__(self):
        if not 0 <= self.epsilon:
            raise ValueError("epsilon must be non-negative")
        if self.n_compression >= self.m:
            raise ValueError("compression size must be smaller than the sample")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0,1)")
        if self.k_alphabet < 1:
            raise ValueError("alphabet size must be >= 1")


def gb(epsilon: float, n_compression: int, delta: float, m: int,
       k_alphabet: int = 1) -> float:
    """The compression generalization bound; raises if n_compression >= m."""
    p = BoundParams(epsilon, n_compression, delta, m, k_alphabet)
    alpha = p.m / (p.m - p.n_compression)
    load = ((p.n_compression + 1) * math.log(p.m * p.k_alphabet)
            + math.log(1.0 / p.delta)) / (p.m - p.n_compression)
    return alpha * p.epsilon + (2.0 / 3.0) * load + \
        (3.0 / math.sqrt(2.0)) * math.sqrt(alpha * p.epsilon * load)


def phi(n_t: int, m: int, delta: float) -> float:
    """Per-sample complexity of a scale whose net has n_t points."""
    if n_t >= m:
        raise ValueError("net size must be smaller than the sample")
    return ((n_t + 1) * math.log(m) + math.log(1.0 / delta)) / m


def g_value(epsilon: float, phi_t: float) -> float:
    """Scale-local bound: eps + (2/3) phi + (3/sqrt 2) sqrt(eps phi)."""
    if epsilon < 0 or phi_t < 0:
        raise ValueError("epsilon and phi must be non-negative")
    return epsilon + (2.0 / 3.0) * phi_t + \
        (3.0 / math.sqrt(2.0)) * math.sqrt(epsilon * phi_t)


def gamma(c: float) -> float:
    """If eps >= c*phi then gamma(c)*eps >= g_value(eps, phi)."""
    return 1.0 + 2.0 / (3.0 * c) + 3.0 / math.sqrt(2.0 * c)


def gamma_tilde(c: float) -> float:
    """If phi >= c*eps then gamma_tilde(c)*phi >= g_value(eps, phi)."""
    return 1.0 / c + 2.0 / 3.0 + 3.0 / math.sqrt(2.0 * c)


def f_budget(beta: float) -> float:
    """Accuracy inflation of the adaptive Bernoulli estimator at budget beta."""
    return 1.0 + 8.0 / (3.0 * beta) + math.sqrt(2.0 / beta)


@dataclass(frozen=True)
class GMinReference:
    """Best achievable bound value over all scales, by the full-label oracle."""

    t_star: float
    value: float
    lower: float  # == value for binary pools; interval endpoints for multiclass
    upper: float


def g_min_reference(pool: LabeledPool, fft: FarthestFirstIndex,
                    delta: float) -> GMinReference:
    """Minimize gb(nu(t), N(t), delta, m, 1) over all distinct scales.

    Evaluation-only oracle (reads all labels); the active learner never
    calls it.  For binary pools the separation value is exact; multiclass
    pools get an interval from the separation sandwich, with t_star and
    value taken from the upper envelope.
    """
    from .classifier import nu_bounds_multiclass, nu_exact_binary_curve

    d = pool.dataset
    ts = d.distinct_pairwise_distances()
    if len(ts) == 0:
        raise ValueError("need at least two distinct points")
    sizes = fft.net_sizes_at(ts)
    ok = sizes < pool.m
    if pool.n_labels == 2:
        nus = nu_exact_binary_curve(pool, ts)
        vals = np.array([gb(float(nus[i]), int(sizes[i]), delta, pool.m, 1)
                         if ok[i] else np.inf for i in range(len(ts))])
        best = int(np.argmin(vals))
        v = float(vals[best])
        return GMinReference(t_star=float(ts[best]), value=v, lower=v, upper=v)
    lowers = np.full(len(ts), np.inf)
    uppers = np.full(len(ts), np.inf)
    for i in range(len(ts)):
        if not ok[i]:
            continue
        lo, hi = nu_bounds_multiclass(pool, float(ts[i]), fft)
        lowers[i] = gb(lo, int(sizes[i]), delta, pool.m, 1)
        uppers[i] = gb(hi, int(sizes[i]), delta, pool.m, 1)
    best = int(np.argmin(uppers))
    return GMinReference(t_star=float(ts[best]), value=float(uppers[best]),
                         lower=float(lowers.min()), upper=float(uppers[best]))
