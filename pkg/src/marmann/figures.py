"""Figure rendering for the report path.

Suites render a label-complexity plot and an error/bound plot next to the
results CSV; the curve subcommands render a line plot next to their CSV.
Everything uses the Agg backend so the CLI works headless.
"""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_STYLE = {
    "figure.figsize": (6.0, 4.0),
    "figure.dpi": 120,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "font.size": 9,
    "legend.fontsize": 8,
}


def _grouped(rows, key: str) -> dict[str, dict[int, list[float]]]:
    out: dict[str, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in rows:
        v = float(getattr(r, key))
        if np.isfinite(v):
            out[r.learner][r.m].append(v)
    return out


def render_suite_figures(rows, out_dir: Path) -> list[Path]:
    paths = []
    with plt.rc_context(_STYLE):
        paths.append(_labels_figure(rows, out_dir / "labels_vs_m.png"))
        paths.append(_error_figure(rows, out_dir / "error_vs_m.png"))
    return [p for p in paths if p is not None]


def _labels_figure(rows, path: Path):
    uniq = _grouped(rows, "unique_labels")
    total = _grouped(rows, "total_requests")
    if not uniq:
        return None
    fig, ax = plt.subplots()
    for learner, by_m in sorted(uniq.items()):
        ms = sorted(by_m)
        ax.plot(ms, [np.mean(by_m[m]) for m in ms], "o-",
                label=f"{learner} unique")
        if learner == "marmann":
            ax.plot(ms, [np.mean(total[learner][m]) for m in ms], "s--",
                    label=f"{learner} total requests")
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("pool size m")
    ax.set_ylabel("labels")
    ax.set_title("label complexity")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _error_figure(rows, path: Path):
    test = _grouped(rows, "test_error")
    bound = _grouped(rows, "g_hat")
    if not test:
        return None
    fig, ax = plt.subplots()
    for learner, by_m in sorted(test.items()):
        ms = sorted(by_m)
        ax.plot(ms, [np.mean(by_m[m]) for m in ms], "o-",
                label=f"{learner} test error")
        if learner in bound:
            ax.plot(ms, [2 * np.mean(bound[learner][m]) for m in ms], ":",
                    label=f"{learner} 2x bound")
    ax.set_xscale("log")
    ax.set_xlabel("pool size m")
    ax.set_ylabel("error")
    ax.set_title("held-out error vs certified bound")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def render_curve_figure(xs, ys, path: Path, xlabel: str, ylabel: str,
                        title: str, logx: bool = False) -> Path:
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        ax.plot(xs, ys, "-")
        if logx:
            ax.set_xscale("log")
        ax.set_xlabel(xlabel)
        ax.set_ylabel(ylabel)
        ax.set_title(title)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
    return path
