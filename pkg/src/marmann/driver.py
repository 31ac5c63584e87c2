"""End-to-end active runs: select a scale, build the final compression set,
return the classifier plus an audited report.

The reported bound value recomputes from the classifier's exact empirical
error on the pool (an evaluation-mode read), not from the search estimate;
both numbers appear in the report.  The compression size is the size of
the set actually output -- the net at half the selected scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import gb
from .classifier import CompressionSet, NNClassifier, empirical_error, reconstruct
from .nnset import MarmannState, full_nn_set
from .pool import LabeledPool
from .selection import SearchTrace, select_scale


@dataclass
class RunReport:
    t_hat: float
    compression_size: int
    eps_hat_active: float     # search-time estimate at the selected scale
    eps_hat_final: float      # exact empirical error of the output classifier
    g_hat: float              # gb(eps_hat_final, compression_size, delta, m, 1)
    unique_labels: int
    total_requests: int
    select_requests: int      # ledger delta attributable to the search
    build_requests: int       # ledger delta of the final build stage
    delta: float
    m: int
    seed: int | None
    search_trace: SearchTrace

    def as_dict(self) -> dict:
        out = {k: v for k, v in vars(self).items() if k != "search_trace"}
        out["search_trace"] = self.search_trace.as_dict()
        return out


def run_marmann(pool: LabeledPool, delta: float,
                seed: int | np.random.Generator = 0,
                scales: np.ndarray | None = None
                ) -> tuple[NNClassifier, RunReport, MarmannState]:
    """One full active run over the pool.  Deterministic given (pool, seed)."""
    state = MarmannState(pool, delta, seed, scales=scales)
    t_hat, trace = select_scale(delta, state)
    ledger = pool.ledger
    before_build = ledger.total_requests
    cs = full_nn_set(t_hat, state)
    build_requests = ledger.total_requests - before_build
    h = reconstruct(cs, pool.dataset)
    eps_final = empirical_error(h, pool)
    n_hat = len(cs)
    g_hat = gb(eps_final, n_hat, delta, pool.m, 1) if n_hat < pool.m else math.inf
    report = RunReport(
        t_hat=t_hat,
        compression_size=n_hat,
        eps_hat_active=trace.record_for(t_hat).eps_hat,
        eps_hat_final=eps_final,
        g_hat=g_hat,
        unique_labels=ledger.unique_queries,
        total_requests=ledger.total_requests,
        select_requests=trace.total_requests,
        build_requests=build_requests,
        delta=delta,
        m=pool.m,
        seed=seed if isinstance(seed, int) else None,
        search_trace=trace,
    )
    return h, report, state


def realized_error_at(state: MarmannState, t: float,
                      audit_seed: int = 0x5EED) -> float:
    """Exact empirical error of the full relabeled net at scale t, reusing
    every label decided during the run and completing the rest with
    evaluation-mode votes (not ledger-counted).

    This realizes the quantity the run's guarantees are stated about for a
    tested scale, without disturbing the run's ledger or rng stream; call
    it only after the run is finished.
    """
    entry = state.cache.entry(t, state.fft, state.pool.dataset)
    rng = np.random.default_rng(audit_seed)
    decided = entry.decided.copy()
    try:
        for i in range(entry.n_regions):
            if entry.decided[i] < 0:
                state.decide_region(entry, i, rng=rng, count_labels=False)
        cs = CompressionSet(point_ids=entry.net_ids, labels=entry.decided.copy())
        h = reconstruct(cs, state.pool.dataset)
        return empirical_error(h, state.pool)
    finally:
        entry.decided[:] = decided
