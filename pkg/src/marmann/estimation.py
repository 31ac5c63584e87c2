"""Adaptive Bernoulli mean estimation and the active error estimator.

The core estimator consumes i.i.d. {0,1} draws on a doubling schedule --
4 seed draws, then extensions to 8, 16, ... -- and stops early as soon as
the running mean clears an empirical-Bernstein-style threshold
``beta * ln(2n/delta) / n``.  With budget beta >= 7 the output p_hat
satisfies, with probability 1 - delta: if p_hat <= theta then the true
mean is at most f(beta) * theta, and otherwise p_hat brackets the true
mean within [p/f(beta), p/(2-f(beta))], where f(beta) = 1 + 8/(3 beta)
+ sqrt(2/beta).  The draw count never exceeds
8 beta ln(8 beta/(delta psi)) / psi at psi = max(theta, p/f(beta)).

All logarithms are natural except the explicit base-2 log that sizes the
doubling schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .nnset import MarmannState

# A draw source yields a requested number of fresh i.i.d. {0,1} draws.
DrawBatch = Callable[[int], np.ndarray]


@dataclass(frozen=True)
class EstBerConfig:
    theta: float
    beta: float = 52.0
    delta: float = 0.05

    def __post_init__(self):
        if self.theta <= 0:
            raise ValueError("threshold theta must be positive")
        if self.beta < 7:
            raise ValueError("budget beta must be at least 7")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0,1)")


@dataclass(frozen=True)
class EstimateOutcome:
    p_hat: float
    draws: int
    rounds: int
    broke_early: bool


def est_ber(stream: DrawBatch, cfg: EstBerConfig) -> EstimateOutcome:
    """Run the doubling-schedule estimator against a Bernoulli draw source."""
    theta, beta, delta = cfg.theta, cfg.beta, cfg.delta
    total = int(np.sum(stream(4)))
    n = 4
    p_hat = total / n
    big_k = (4.0 * beta / theta) * math.log(8.0 * beta / (delta * theta))
    loop_arg = beta * math.log(2.0 * big_k / delta) / theta if big_k > 0 else 0.0
    i_max = math.ceil(math.log2(loop_arg)) if loop_arg > 1.0 else 2
    rounds = 0
    broke = False
    for i in range(3, i_max + 1):
        target = 2 ** i
        total += int(np.sum(stream(target - n)))
        n = target
        p_hat = total / n
        rounds += 1
        if p_hat > beta * math.log(2.0 * n / delta) / n:
            broke = True
            break
    if rounds > 0 and n > big_k:
        # the schedule analysis promises the final round stays below K
        raise AssertionError(f"draw schedule exceeded its cap: n={n} > K={big_k}")
    return EstimateOutcome(p_hat=p_hat, draws=n, rounds=rounds, broke_early=broke)


def bernoulli_stream(p: float, rng: np.random.Generator) -> DrawBatch:
    """Synthetic coin with success probability p (for tests and audits)."""
    if not 0 <= p <= 1:
        raise ValueError("p must lie in [0,1]")

    def draw(k: int) -> np.ndarray:
        return (rng.random(k) < p).astype(np.uint8)

    return draw


def draw_count_cap(p: float, cfg: EstBerConfig) -> float:
    """Per-run draw bound at the true mean p (test-side audit quantity)."""
    f = 1.0 + 8.0 / (3.0 * cfg.beta) + math.sqrt(2.0 / cfg.beta)
    psi = max(cfg.theta, p / f)
    return 8.0 * cfg.beta * math.log(8.0 * cfg.beta / (cfg.delta * psi)) / psi


ESTIMATE_BUDGET = 52.0


def estimate_err(t: float, theta: float, delta: float,
                 state: MarmannState) -> EstimateOutcome:
    """Estimate the empirical error of the scale-t relabeled net classifier.

    Each Bernoulli draw samples a uniform labeled pool point, resolves the
    label its region would receive in the compression set at scale t
    (memoized; a fresh region costs one budget of region queries), and
    compares.  The estimator runs at budget 52 and confidence
    delta / (2 m^2); ``theta`` is the accuracy threshold.
    """
    entry = state.cache.entry(t, state.fft, state.pool.dataset)
    assign = entry.partition.assignment

    def draw(k: int) -> np.ndarray:
        ids, truths = state.pool.sample_pairs(k, state.rng)
        regions = assign[ids]
        fresh = regions[entry.decided[regions] < 0]
        if fresh.size:
            uniq, first_pos = np.unique(fresh, return_index=True)
            for r in uniq[np.argsort(first_pos, kind="stable")]:
                state.decide_region(entry, int(r))
        return (entry.decided[regions] != truths).astype(np.uint8)

    cfg = EstBerConfig(theta=theta, beta=ESTIMATE_BUDGET,
                       delta=delta / (2.0 * state.m ** 2))
    return est_ber(draw, cfg)
