"""Synthetic pools for the experiment harness and the acceptance suite.

Every generator builds a labeled pool together with a sampler for fresh
test points from the same population, so held-out error is measurable.
The planted-margin family places alternating-label Euclidean clusters with
a guaranteed cross-label gap and then flips an exact fraction of pool
labels, which certifies an upper bound on the separation value at the
planted margin.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dataset import Dataset
from .lab import (AdversarialParams, UniformNoisyParams, random_sigma,
                  sample_adversarial, sample_uniform_noisy)
from .pool import LabeledPool

TestSampler = Callable[[int, np.random.Generator], tuple[np.ndarray, np.ndarray]]


@dataclass
class GeneratedInstance:
    pool: LabeledPool
    sample_test: TestSampler
    meta: dict


def generate_planted(margin: float, noise_rate: float, clusters: int, m: int,
                     rng: np.random.Generator, n_labels: int = 2,
                     radius: Optional[float] = None) -> GeneratedInstance:
    """Clustered Euclidean pool with cross-label gap >= margin, then an exact
    floor(noise_rate * m) labels flipped.

    Cluster centers sit on a line, spaced margin + 2*radius apart, labels
    cycling through the alphabet; differently labeled clean points are
    therefore at least the margin apart, so removing the flipped points
    witnesses nu(margin) <= noise_rate.
    """
    if not 0 <= noise_rate < 0.5:
        raise ValueError("noise rate must lie in [0, 1/2)")
    if margin <= 0 or clusters < 2 or m < clusters:
        raise ValueError("infeasible planted geometry")
    if n_labels < 2 or n_labels > clusters:
        raise ValueError("need 2 <= n_labels <= clusters")
    r = margin / 4.0 if radius is None else radius
    if r <= 0:
        raise ValueError("cluster radius must be positive")
    spacing = margin + 2.0 * r
    centers = np.stack([np.arange(clusters) * spacing,
                        np.zeros(clusters)], axis=1)
    center_labels = np.arange(clusters) % n_labels

    def draw_clean(n: int, gen: np.random.Generator
                   ) -> tuple[np.ndarray, np.ndarray]:
        which = gen.integers(0, clusters, size=n)
        ang = gen.random(n) * 2.0 * np.pi
        rad = r * np.sqrt(gen.random(n))
        pts = centers[which] + rad[:, None] * np.stack([np.cos(ang),
                                                        np.sin(ang)], axis=1)
        return pts, center_labels[which]

    points, labels = draw_clean(m, rng)
    labels = labels.copy()
    n_flip = int(np.floor(noise_rate * m))
    flipped = rng.choice(m, size=n_flip, replace=False)
    if n_labels == 2:
        labels[flipped] = 1 - labels[flipped]
    else:
        bump = 1 + rng.integers(0, n_labels - 1, size=n_flip)
        labels[flipped] = (labels[flipped] + bump) % n_labels

    def sample_test(n: int, gen: np.random.Generator
                    ) -> tuple[np.ndarray, np.ndarray]:
        pts, ys = draw_clean(n, gen)
        ys = ys.copy()
        flips = gen.random(n) < noise_rate
        if n_labels == 2:
            ys[flips] = 1 - ys[flips]
        else:
            k = int(flips.sum())
            ys[flips] = (ys[flips] + 1 + gen.integers(0, n_labels - 1, size=k)) \
                % n_labels
        return pts, ys

    pool = LabeledPool(Dataset.from_points(points), labels, n_labels=n_labels)
    meta = {"margin": margin, "noise_rate": noise_rate, "clusters": clusters,
            "n_flipped": n_flip, "radius": r}
    return GeneratedInstance(pool=pool, sample_test=sample_test, meta=meta)


def generate_uniform_noisy_line(n_support: int, beta: float, m: int,
                                rng: np.random.Generator) -> GeneratedInstance:
    """Uniform draws from an integer-line support with flip-probability noise."""
    params = UniformNoisyParams(n_support=n_support, beta=beta)
    clean = rng.integers(0, 2, size=n_support).astype(np.int64)
    coords, labels = sample_uniform_noisy(params, clean, m, rng)

    def sample_test(n: int, gen: np.random.Generator
                    ) -> tuple[np.ndarray, np.ndarray]:
        return sample_uniform_noisy(params, clean, n, gen)

    pool = LabeledPool(Dataset.from_points(coords), labels, n_labels=2)
    meta = {"n_support": n_support, "beta": beta,
            "clean": clean.tolist(), "bayes_error": beta}
    return GeneratedInstance(pool=pool, sample_test=sample_test, meta=meta)


def generate_adversarial(d: int, b: float, p: float, m: int,
                         rng: np.random.Generator,
                         sigma: Optional[np.ndarray] = None
                         ) -> GeneratedInstance:
    """Heavy/light lower-bound family embedded on the integer line."""
    sig = random_sigma(d, rng) if sigma is None else np.asarray(sigma)
    params = AdversarialParams(d=d, b=b, p=p, sigma=sig)
    coords, labels = sample_adversarial(params, m, rng)

    def sample_test(n: int, gen: np.random.Generator
                    ) -> tuple[np.ndarray, np.ndarray]:
        return sample_adversarial(params, n, gen)

    pool = LabeledPool(Dataset.from_points(coords), labels, n_labels=2)
    meta = {"d": d, "b": b, "p": p, "sigma": sig.tolist(),
            "bayes_error": params.bayes_error}
    return GeneratedInstance(pool=pool, sample_test=sample_test, meta=meta)
