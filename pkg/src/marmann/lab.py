"""Hard-instance generators and exact quantities behind the lower bounds.

The two-parameter family puts mass 1-p on a deterministically labeled
"heavy" support point and spreads p uniformly over d-1 "light" points whose
labels are sign-flipped coins with bias b along a fixed pattern sigma.
The indistinguishability value bayes(k, b) -- the Bayes error of telling a
+b coin from a -b coin after k flips -- is computed exactly via binomial
count classes, and its piecewise-linear minorant interpolates the exact
values at 0, 1, 3, 5, ...

Support points embed on the integer line, so distinct support points are
at distance >= 1 and the separation value at any scale below 1 reduces to
a sum of per-point minority counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .pool import LabeledPool


@dataclass(frozen=True)
class AdversarialParams:
    """Heavy/light mixture with Rademacher-noise labels on the light points."""

    d: int                  # support size, heavy point included
    b: float                # label bias on light points
    p: float                # total light mass
    sigma: np.ndarray       # {-1,+1} pattern of length d-1

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("need at least one light point (d >= 2)")
        if not 0 <= self.b <= 1:
            raise ValueError("bias b must lie in [0,1]")
        if not 0 < self.p < 1:
            raise ValueError("light mass p must lie in (0,1)")
        sig = np.asarray(self.sigma, dtype=np.int64)
        if sig.shape != (self.d - 1,) or not np.all(np.abs(sig) == 1):
            raise ValueError("sigma must be a {-1,+1} vector of length d-1")
        object.__setattr__(self, "sigma", sig)

    @property
    def bayes_error(self) -> float:
        """Exact Bayes error: light mass times the minority coin weight."""
        return self.p * (0.5 - self.b / 2.0)

    def check_noise_budget(self, eta: float) -> None:
        if self.bayes_error > eta + 1e-12:
            raise ValueError(
                f"p(1/2 - b/2) = {self.bayes_error} exceeds the noise budget {eta}")


@dataclass(frozen=True)
class UniformNoisyParams:
    """Uniform marginal over an integer-line support with flip-probability noise."""

    n_support: int
    beta: float

    def __post_init__(self):
        if self.n_support < 1:
            raise ValueError("support must be non-empty")
        if not 0 <= self.beta < 0.5:
            raise ValueError("flip probability must lie in [0, 1/2)")


def random_sigma(d: int, rng: np.random.Generator) -> np.ndarray:
    return rng.choice(np.array([-1, 1], dtype=np.int64), size=d - 1)


def sample_adversarial(params: AdversarialParams, n: int,
                       rng: np.random.Generator
                       ) -> tuple[np.ndarray, np.ndarray]:
    """Draw (coords, labels) of size n; labels are {0,1} with 1 = +1.

    Support point j in [1, d-1] sits at coordinate j; the heavy point sits
    at coordinate d.  Heavy draws are always labeled 1; a light draw at j
    is labeled 1 with probability 1/2 + b*sigma_j/2.
    """
    heavy = rng.random(n) >= params.p
    support = np.where(heavy, params.d,
                       rng.integers(1, params.d, size=n))
    p_one = np.where(heavy, 1.0,
                     0.5 + params.b * params.sigma[support - 1] / 2.0)
    labels = (rng.random(n) < p_one).astype(np.int64)
    return support.astype(np.float64)[:, None], labels


def adversarial_pool(params: AdversarialParams, n: int,
                     rng: np.random.Generator) -> LabeledPool:
    coords, labels = sample_adversarial(params, n, rng)
    return LabeledPool(Dataset.from_points(coords), labels, n_labels=2)


def sample_uniform_noisy(params: UniformNoisyParams, clean: np.ndarray, n: int,
                         rng: np.random.Generator
                         ) -> tuple[np.ndarray, np.ndarray]:
    """Uniform support draws with labels flipped from `clean` w.p. beta."""
    if clean.shape != (params.n_support,):
        raise ValueError("need one clean label per support point")
    idx = rng.integers(0, params.n_support, size=n)
    flips = rng.random(n) < params.beta
    labels = np.where(flips, 1 - clean[idx], clean[idx]).astype(np.int64)
    return (idx + 1).astype(np.float64)[:, None], labels


# ---------------------------------------------------------------------------
# exact indistinguishability values
# ---------------------------------------------------------------------------

_MAX_EXACT_K = 10_000


def bayes_fn(k: int, b: float) -> float:
    """Bayes error of distinguishing k i.i.d. +b coins from -b coins.

    Exact: sums |P - Q| over the k+1 head-count classes with binomial
    weights, entirely in logs to stay finite for k in the thousands.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > _MAX_EXACT_K:
        raise ValueError(f"exact summation supported up to k = {_MAX_EXACT_K}")
    if not 0 <= b <= 1:
        raise ValueError("bias b must lie in [0,1]")
    if k == 0:
        return 0.5
    p, q = (1.0 + b) / 2.0, (1.0 - b) / 2.0
    tv = 0.0
    for j in range(k + 1):
        log_c = math.lgamma(k + 1) - math.lgamma(j + 1) - math.lgamma(k - j + 1)
        w_plus = _safe_exp(log_c, p, j, q, k - j)
        w_minus = _safe_exp(log_c, q, j, p, k - j)
        tv += abs(w_plus - w_minus)
    return 0.5 * (1.0 - 0.5 * tv)


def _safe_exp(log_c: float, a: float, i: int, c: float, j: int) -> float:
    if (a == 0.0 and i > 0) or (c == 0.0 and j > 0):
        return 0.0
    la = i * math.log(a) if i else 0.0
    lc = j * math.log(c) if j else 0.0
    return math.exp(log_c + la + lc)


def bayes_check_fn(kappa: float, b: float) -> float:
    """Piecewise-linear minorant of bayes(., b): interpolation at 0, 1, 3, 5, ...

    Defined for any real kappa >= 0; beyond the last finite knot needed it
    keeps extending the knot sequence.
    """
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    if kappa <= 1.0:
        lo_k, hi_k = 0, 1
    else:
        lo_k = int(kappa) if int(kappa) % 2 == 1 else int(kappa) - 1
        hi_k = lo_k + 2
        if kappa == lo_k:
            hi_k = lo_k  # exactly on a knot
    if lo_k == hi_k:
        return bayes_fn(lo_k, b)
    f_lo, f_hi = bayes_fn(lo_k, b), bayes_fn(hi_k, b)
    w = (kappa - lo_k) / (hi_k - lo_k)
    return (1.0 - w) * f_lo + w * f_hi


# ---------------------------------------------------------------------------
# minority counts
# ---------------------------------------------------------------------------

def minority_count_nu(coords: np.ndarray, labels: np.ndarray) -> float:
    """Separation value at any sub-unit scale of an integer-support sample:
    the per-support-point minority counts, averaged over the sample."""
    coords = np.asarray(coords, dtype=np.float64).reshape(len(labels), -1)[:, 0]
    labels = np.asarray(labels, dtype=np.int64)
    total = 0
    for x in np.unique(coords):
        ys = labels[coords == x]
        ones = int(ys.sum())
        total += min(ones, len(ys) - ones)
    return total / len(labels)


@dataclass(frozen=True)
class MinorityBounds:
    estimate: float          # Monte Carlo mean of sum_x 2 n_x p_x (1 - p_x)
    lower: float             # 2 beta (1-beta) (m - N)
    upper: float             # 2 beta (1-beta) m
    trials: int


def expected_minority_bounds(params: UniformNoisyParams, m: int, trials: int,
                             rng: np.random.Generator) -> MinorityBounds:
    """Monte Carlo check of the minority-count expectation sandwich."""
    if trials < 100:
        raise ValueError("need at least 100 trials for a stable estimate")
    n_sup, beta = params.n_support, params.beta
    total = 0.0
    for _ in range(trials):
        clean = rng.integers(0, 2, size=n_sup)
        idx = rng.integers(0, n_sup, size=m)
        flips = rng.random(m) < beta
        labels = np.where(flips, 1 - clean[idx], clean[idx]).astype(np.int64)
        n_x = np.bincount(idx, minlength=n_sup)
        n_one = np.bincount(idx, weights=labels, minlength=n_sup)
        with np.errstate(invalid="ignore"):
            p_hat = np.where(n_x > 0, n_one / np.maximum(n_x, 1), 0.0)
        total += float(np.sum(2.0 * n_x * p_hat * (1.0 - p_hat)))
    est = total / trials
    base = 2.0 * beta * (1.0 - beta)
    return MinorityBounds(estimate=est, lower=base * (m - n_sup),
                          upper=base * m, trials=trials)
