"""Batch harness: generate pools, run learners over (m, seed) grids, and
write machine-readable results.

Every cell is fully determined by (config, seed): the pool, the learner's
randomness, and the held-out test sample each use a child generator keyed
by (seed, m, stream tag), so replaying a config reproduces the result rows
byte for byte (wall-clock column aside).  The emitted bound column always
recomputes as gb(emp_error, N_hat, delta, m, 1), whatever score the
learner optimized internally, so result files can be audited offline.
"""

from __future__ import annotations

import csv
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .bounds import g_min_reference, gb
from .dataset import load_labeled_points_csv
from .driver import run_marmann
from .generators import (GeneratedInstance, generate_adversarial,
                         generate_planted, generate_uniform_noisy_line)
from .nets import build_fft
from .passive import passive_relabel, passive_separation_binary
from .pool import LabeledPool

RESULT_COLUMNS = ["learner", "m", "seed", "t_hat", "N_hat", "emp_error",
                  "test_error", "G_hat", "g_min_ref", "unique_labels",
                  "total_requests", "wall_time"]
SCHEMA_HEADER = "# marmann results schema v1"
KNOWN_LEARNERS = ("marmann", "passive-relabel", "passive-separation")


@dataclass
class ExperimentConfig:
    generator: dict
    m_values: list[int]
    delta: float
    seeds: list[int]
    learners: list[str] = field(default_factory=lambda: ["marmann",
                                                         "passive-relabel"])
    results_name: str = "results.csv"
    write_traces: bool = True
    write_figures: bool = True
    g_min_max_m: int = 400
    test_points_factor: int = 10

    def __post_init__(self):
        for lr in self.learners:
            if lr not in KNOWN_LEARNERS:
                raise ValueError(f"unknown learner {lr!r}")
        if not 0 < self.delta < 0.25:
            raise ValueError("delta must lie in (0, 1/4)")

    @classmethod
    def from_dict(cls, raw: dict) -> "ExperimentConfig":
        out = raw.get("output", {})
        return cls(
            generator=dict(raw["generator"]),
            m_values=[int(v) for v in raw["m"]],
            delta=float(raw["delta"]),
            seeds=[int(s) for s in raw["seeds"]],
            learners=list(raw.get("learners", ["marmann", "passive-relabel"])),
            results_name=out.get("results", "results.csv"),
            write_traces=bool(out.get("traces", True)),
            write_figures=bool(out.get("figures", True)),
            g_min_max_m=int(out.get("g_min_max_m", 400)),
            test_points_factor=int(out.get("test_points_factor", 10)),
        )


def load_config(path: str) -> ExperimentConfig:
    """Read a TOML or JSON config file."""
    text = Path(path).read_bytes()
    if path.endswith(".json"):
        raw = json.loads(text)
    else:
        try:
            import tomllib  # py >= 3.11
        except ModuleNotFoundError:
            import tomli as tomllib
        raw = tomllib.loads(text.decode())
    return ExperimentConfig.from_dict(raw)


@dataclass
class ResultRow:
    learner: str
    m: int
    seed: int
    t_hat: float
    n_hat: int
    emp_error: float
    test_error: float
    g_hat: float
    g_min_ref: float
    unique_labels: int
    total_requests: int
    wall_time: float

    def as_list(self) -> list:
        return [self.learner, self.m, self.seed, repr(self.t_hat), self.n_hat,
                repr(self.emp_error), repr(self.test_error), repr(self.g_hat),
                repr(self.g_min_ref), self.unique_labels, self.total_requests,
                repr(self.wall_time)]


def build_instance(cfg: ExperimentConfig, m: int, seed: int) -> GeneratedInstance:
    """The pool for one (m, seed) cell; identical across learners."""
    gen = cfg.generator
    kind = gen["kind"]
    rng = np.random.default_rng([seed, m, 0xDA7A])
    if kind == "planted":
        noise = float(gen.get("noise_rate", 0.0))
        if "noise_rate_over_sqrt_m" in gen:
            noise = float(gen["noise_rate_over_sqrt_m"]) / math.sqrt(m)
        return generate_planted(
            margin=float(gen.get("margin", 1.0)), noise_rate=noise,
            clusters=int(gen.get("clusters", 4)), m=m, rng=rng,
            n_labels=int(gen.get("n_labels", 2)),
            radius=gen.get("radius"))
    if kind == "uniform-noisy":
        return generate_uniform_noisy_line(
            n_support=int(gen["n_support"]), beta=float(gen["beta"]),
            m=m, rng=rng)
    if kind == "adversarial":
        return generate_adversarial(
            d=int(gen["d"]), b=float(gen["b"]), p=float(gen["p"]), m=m, rng=rng)
    if kind == "file":
        ds, labels = load_labeled_points_csv(gen["path"])
        if ds.m != m:
            raise ValueError(f"file pool has m={ds.m}, config asked for {m}")
        pool = LabeledPool(ds, labels)

        def no_test(n: int, g: np.random.Generator):
            raise ValueError("file-backed pools have no test distribution")

        return GeneratedInstance(pool=pool, sample_test=no_test,
                                 meta={"path": gen["path"]})
    raise ValueError(f"unknown generator kind {kind!r}")


def _test_error(instance: GeneratedInstance, classifier, cfg: ExperimentConfig,
                m: int, seed: int) -> float:
    if cfg.test_points_factor <= 0 or instance.pool.dataset.points is None:
        return math.nan
    try:
        pts, ys = instance.sample_test(cfg.test_points_factor * m,
                                       np.random.default_rng([seed, m, 0x7E57]))
    except ValueError:
        return math.nan
    return float(np.mean(classifier.predict(pts) != ys))


def run_cell(cfg: ExperimentConfig, learner: str, m: int, seed: int,
             g_min_cache: dict) -> tuple[ResultRow, Optional[dict]]:
    """Run one (learner, m, seed) cell; returns the row and an optional trace."""
    instance = build_instance(cfg, m, seed)
    pool = instance.pool
    t0 = time.perf_counter()
    trace_dict = None
    if learner == "marmann":
        h, report, _ = run_marmann(pool, cfg.delta,
                                   seed=np.random.default_rng([seed, m, 1]))
        t_hat, n_hat = report.t_hat, report.compression_size
        emp = report.eps_hat_final
        uniq, total = report.unique_labels, report.total_requests
        trace_dict = report.search_trace.as_dict()
    elif learner == "passive-relabel":
        res = passive_relabel(pool, cfg.delta)
        h, t_hat, n_hat, emp = res.classifier, res.t_star, len(res.compression), \
            res.emp_error
        uniq = total = pool.m
    else:
        res = passive_separation_binary(pool, cfg.delta)
        h, t_hat, n_hat, emp = res.classifier, res.t_star, len(res.compression), \
            res.emp_error
        uniq = total = pool.m
    g_hat = gb(emp, n_hat, cfg.delta, pool.m, 1) if n_hat < pool.m else math.inf
    test_err = _test_error(instance, h, cfg, m, seed)
    g_min = _g_min_for(cfg, m, seed, instance, g_min_cache)
    wall = time.perf_counter() - t0
    row = ResultRow(learner=learner, m=m, seed=seed, t_hat=float(t_hat),
                    n_hat=int(n_hat), emp_error=float(emp),
                    test_error=test_err, g_hat=float(g_hat), g_min_ref=g_min,
                    unique_labels=int(uniq), total_requests=int(total),
                    wall_time=wall)
    return row, trace_dict


def _g_min_for(cfg: ExperimentConfig, m: int, seed: int,
               instance: GeneratedInstance, cache: dict) -> float:
    key = (m, seed)
    if key in cache:
        return cache[key]
    if m > cfg.g_min_max_m or instance.pool.n_labels != 2:
        cache[key] = math.nan
        return cache[key]
    fft = build_fft(instance.pool.dataset)
    cache[key] = g_min_reference(instance.pool, fft, cfg.delta).value
    return cache[key]


def run_suite(cfg: ExperimentConfig, out_dir: str) -> Path:
    """Execute every (learner, m, seed) cell and write results + traces.

    Per-cell failures are recorded as rows with NaN metrics and the suite
    continues.  Returns the results path.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rows: list[ResultRow] = []
    g_min_cache: dict = {}
    for learner in cfg.learners:
        for m in cfg.m_values:
            for seed in cfg.seeds:
                try:
                    row, trace = run_cell(cfg, learner, m, seed, g_min_cache)
                except Exception as exc:  # keep the suite going
                    row = ResultRow(learner=learner, m=m, seed=seed,
                                    t_hat=math.nan, n_hat=0,
                                    emp_error=math.nan, test_error=math.nan,
                                    g_hat=math.nan, g_min_ref=math.nan,
                                    unique_labels=0, total_requests=0,
                                    wall_time=math.nan)
                    trace = {"error": repr(exc)}
                rows.append(row)
                if cfg.write_traces and trace is not None:
                    path = out / f"trace_{learner}_{m}_{seed}.json"
                    path.write_text(json.dumps(trace, indent=2, sort_keys=True))
    results = out / cfg.results_name
    write_results_csv(results, rows)
    if cfg.write_figures:
        from .figures import render_suite_figures
        render_suite_figures(rows, out)
    return results


def write_results_csv(path: Path, rows: list[ResultRow]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(SCHEMA_HEADER + "\n")
        writer = csv.writer(fh)
        writer.writerow(RESULT_COLUMNS)
        for row in rows:
            writer.writerow(row.as_list())


def read_results_csv(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    reader = csv.DictReader(lines)
    return [dict(r) for r in reader]
