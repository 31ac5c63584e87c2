"""Model selection: a binary search over candidate scales.

Each probed scale gets its error estimated to accuracy phi(t); an estimate
below phi(t) discards the scale and everything finer ("go right"), an
estimate above (11/10) phi(t) discards the scale and everything coarser
("go left"), and anything in between ends the search.  The selected scale
minimizes the estimated bound g_value(eps_hat(t), phi(t)) over the scales
that went left plus the pivot, ties to the smallest scale.  Estimates are
cached on the trace and reused by the final argmin; nothing is
re-estimated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .bounds import g_value, phi
from .estimation import estimate_err
from .nnset import MarmannState


class ConfigurationError(RuntimeError):
    """No usable candidate scale (empty candidate set)."""


@dataclass
class ScaleRecord:
    """Cached statistics of one tested scale."""

    t: float
    n_t: int               # net size at t (the Dist_mon convention)
    phi_t: float
    eps_hat: float
    g_hat: float           # g_value(eps_hat, phi_t)
    draws: int
    requests: int          # ledger total-request delta for this estimate
    decision: str          # "right" | "left" | "stop"


@dataclass
class SearchTrace:
    """Full history of one selection run."""

    tested: list[ScaleRecord] = field(default_factory=list)
    went_left: list[float] = field(default_factory=list)
    t0: Optional[float] = None
    t_hat: Optional[float] = None
    outcome: str = ""      # "stopped" | "exhausted" | "error"
    total_requests: int = 0
    unique_requests: int = 0

    def record_for(self, t: float) -> ScaleRecord:
        for rec in self.tested:
            if rec.t == t:
                return rec
        raise KeyError(f"scale {t} was not tested")

    def as_dict(self) -> dict:
        return {
            "t_hat": self.t_hat,
            "t0": self.t0,
            "outcome": self.outcome,
            "went_left": list(self.went_left),
            "total_requests": self.total_requests,
            "unique_requests": self.unique_requests,
            "tested": [vars(rec).copy() for rec in self.tested],
        }


def select_scale(delta: float, state: MarmannState) -> tuple[float, SearchTrace]:
    """Binary-search the candidate scales; returns (t_hat, trace).

    Raises ConfigurationError when the candidate set is empty.
    """
    if delta != state.delta:
        raise ValueError("delta must match the run state")
    trace = SearchTrace()
    scales = state.scales
    if len(scales) == 0:
        trace.outcome = "error"
        raise ConfigurationError("candidate-scale set is empty; "
                                 "the pool has no usable margin scales")
    ledger = state.pool.ledger
    req0, uniq0 = ledger.total_requests, ledger.unique_queries

    lo, hi = 0, len(scales) - 1
    last_right: Optional[float] = None
    while lo <= hi:
        mid = (lo + hi) // 2  # lower median
        t = float(scales[mid])
        phi_t = phi(state.net_size(t), state.m, delta)
        before = ledger.total_requests
        outcome = estimate_err(t, phi_t, delta, state)
        eps_hat = outcome.p_hat
        rec = ScaleRecord(t=t, n_t=state.net_size(t), phi_t=phi_t,
                          eps_hat=eps_hat, g_hat=g_value(eps_hat, phi_t),
                          draws=outcome.draws,
                          requests=ledger.total_requests - before,
                          decision="")
        trace.tested.append(rec)
        if eps_hat < phi_t:
            rec.decision = "right"
            last_right = t
            lo = mid + 1
        elif eps_hat > 1.1 * phi_t:
            rec.decision = "left"
            trace.went_left.append(t)
            hi = mid - 1
        else:
            rec.decision = "stop"
            trace.t0 = t
            trace.outcome = "stopped"
            break
    else:
        trace.outcome = "exhausted"
        if last_right is not None:
            trace.t0 = last_right

    candidates = sorted(set(trace.went_left) |
                        ({trace.t0} if trace.t0 is not None else set()))
    if not candidates:
        trace.outcome = "error"
        raise ConfigurationError("search produced no candidate scale")
    # argmin of the cached estimated bound; ties go to the smallest scale
    t_hat = min(candidates, key=lambda t: (trace.record_for(t).g_hat, t))
    trace.t_hat = t_hat
    trace.total_requests = ledger.total_requests - req0
    trace.unique_requests = ledger.unique_queries - uniq0
    return t_hat, trace
