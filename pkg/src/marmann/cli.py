"""Command-line interface.

Subcommands:

  marmann run        one active run on a point file; JSON report out
  marmann trace      scale-selection only; dumps the search trace as JSON
  passive run        full-label baseline (relabel or separation variant)
  net-curve          CSV of t,N(t) over the candidate scales (+ figure)
  lab bayes-curve    CSV of the exact coin-distinguishing error curve
  lab adversarial-sample   emit a pool from the heavy/light hard family
  run-suite          batch experiments from a TOML/JSON config

Point files are ``id,x1,...,xd,label`` CSV; distance-matrix input uses
``--matrix`` plus ``--labels``.  Reports that emit delimited output also
render a matching figure next to it unless ``--no-fig`` is passed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .bounds import gb
from .dataset import (Dataset, load_distance_matrix_csv, load_labels_csv,
                      load_labeled_points_csv, write_points_csv)
from .driver import run_marmann
from .experiments import load_config, run_suite
from .generators import generate_adversarial
from .lab import bayes_fn
from .nets import build_fft, net_size_curve
from .nnset import MarmannState
from .pool import LabeledPool
from .selection import select_scale


def _add_data_args(p: argparse.ArgumentParser, labeled: bool = True) -> None:
    p.add_argument("--data", help="labeled point CSV (id,x1,...,xd,label)")
    p.add_argument("--matrix", help="distance-matrix CSV (with --labels)")
    if labeled:
        p.add_argument("--labels", help="id,label CSV for --matrix input")
    p.add_argument("--verify-metric", action="store_true",
                   help="run the O(m^3) triangle-inequality check on load")


def _load_pool(args) -> LabeledPool:
    if bool(args.data) == bool(args.matrix):
        raise SystemExit("provide exactly one of --data or --matrix")
    if args.data:
        ds, labels = load_labeled_points_csv(args.data)
    else:
        if not getattr(args, "labels", None):
            raise SystemExit("--matrix input needs --labels")
        ds = load_distance_matrix_csv(args.matrix)
        labels = load_labels_csv(args.labels, ds.m)
    if args.verify_metric:
        ds.verify_metric()
    return LabeledPool(ds, labels)


def _scale_grid(args, pool: LabeledPool) -> np.ndarray | None:
    """Optional quantile-subsampled scale grid (speed knob; off-spec for the
    guarantees, which are stated over the full candidate set)."""
    spec = getattr(args, "scale_grid", None)
    if not spec or spec == "full":
        return None
    if not spec.startswith("quantile:"):
        raise SystemExit("--scale-grid must be 'full' or 'quantile:<k>'")
    k = int(spec.split(":", 1)[1])
    from .nets import candidate_scales
    fft = build_fft(pool.dataset)
    full = candidate_scales(fft, pool.dataset)
    if len(full) <= k:
        return full
    idx = np.unique(np.linspace(0, len(full) - 1, k).round().astype(int))
    return full[idx]


def _cmd_marmann_run(args) -> int:
    pool = _load_pool(args)
    h, report, _ = run_marmann(pool, args.delta, seed=args.seed,
                               scales=_scale_grid(args, pool))
    payload = report.as_dict()
    out = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)
    return 0


def _cmd_marmann_trace(args) -> int:
    pool = _load_pool(args)
    state = MarmannState(pool, args.delta, seed=args.seed,
                         scales=_scale_grid(args, pool))
    _, trace = select_scale(args.delta, state)
    out = json.dumps(trace.as_dict(), indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)
    return 0


def _cmd_passive_run(args) -> int:
    from .passive import passive_relabel, passive_separation_binary
    pool = _load_pool(args)
    if args.variant == "relabel":
        res = passive_relabel(pool, args.delta)
    else:
        res = passive_separation_binary(pool, args.delta)
    payload = res.as_dict()
    payload["G_hat_recomputed"] = gb(res.emp_error, len(res.compression),
                                     args.delta, pool.m, 1)
    out = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)
    return 0


def _cmd_net_curve(args) -> int:
    if bool(args.data) == bool(args.matrix):
        raise SystemExit("provide exactly one of --data or --matrix")
    if args.data:
        ds, _ = load_labeled_points_csv(args.data)
    else:
        ds = load_distance_matrix_csv(args.matrix)
    if args.verify_metric:
        ds.verify_metric()
    ts, sizes = net_size_curve(build_fft(ds), ds)
    _write_curve_csv(args.out, ["t", "N"], zip(ts, sizes))
    if not args.no_fig and args.out:
        from .figures import render_curve_figure
        render_curve_figure(ts, sizes, Path(args.out).with_suffix(".png"),
                            "scale t", "net size N(t)", "net-size curve",
                            logx=True)
    return 0


def _cmd_bayes_curve(args) -> int:
    ks = np.arange(0, args.kmax + 1)
    vals = [bayes_fn(int(k), args.b) for k in ks]
    _write_curve_csv(args.out, ["k", "bayes"], zip(ks, vals))
    if not args.no_fig and args.out:
        from .figures import render_curve_figure
        render_curve_figure(ks, vals, Path(args.out).with_suffix(".png"),
                            "draws k", "indistinguishability",
                            f"coin-distinguishing error, b={args.b}")
    return 0


def _cmd_adversarial_sample(args) -> int:
    rng = np.random.default_rng(args.seed)
    inst = generate_adversarial(d=args.d, b=args.b, p=args.p, m=args.n, rng=rng)
    if args.eta is not None:
        from .lab import AdversarialParams
        AdversarialParams(d=args.d, b=args.b, p=args.p,
                          sigma=np.asarray(inst.meta["sigma"])
                          ).check_noise_budget(args.eta)
    pool = inst.pool
    write_points_csv(args.out, pool.dataset.points, pool.peek_labels())
    print(json.dumps(inst.meta, sort_keys=True))
    return 0


def _cmd_run_suite(args) -> int:
    cfg = load_config(args.config)
    if args.no_figures:
        cfg.write_figures = False
    results = run_suite(cfg, args.out_dir)
    print(f"results written to {results}")
    return 0


def _write_curve_csv(path, header, rows) -> None:
    fh = open(path, "w", newline="") if path else sys.stdout
    try:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else int(v)
                             for v in row])
    finally:
        if path:
            fh.close()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="marmann-cli", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_marmann = sub.add_parser("marmann", help="active learner")
    msub = p_marmann.add_subparsers(dest="subcommand", required=True)
    p_run = msub.add_parser("run", help="one active run; JSON report")
    _add_data_args(p_run)
    p_run.add_argument("--delta", type=float, default=0.05)
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--out", help="report JSON path (stdout if omitted)")
    p_run.add_argument("--scale-grid", default="full",
                       help="'full' or 'quantile:<k>' (speed knob)")
    p_run.set_defaults(func=_cmd_marmann_run)
    p_trace = msub.add_parser("trace", help="scale search only; JSON trace")
    _add_data_args(p_trace)
    p_trace.add_argument("--delta", type=float, default=0.05)
    p_trace.add_argument("--seed", type=int, default=0)
    p_trace.add_argument("--out")
    p_trace.add_argument("--scale-grid", default="full")
    p_trace.set_defaults(func=_cmd_marmann_trace)

    p_passive = sub.add_parser("passive", help="full-label baselines")
    psub = p_passive.add_subparsers(dest="subcommand", required=True)
    p_prun = psub.add_parser("run", help="one passive run; JSON report")
    _add_data_args(p_prun)
    p_prun.add_argument("--variant", choices=["relabel", "separation"],
                        default="relabel")
    p_prun.add_argument("--delta", type=float, default=0.05)
    p_prun.add_argument("--out")
    p_prun.set_defaults(func=_cmd_passive_run)

    p_net = sub.add_parser("net-curve", help="CSV of t,N(t) over candidate scales")
    _add_data_args(p_net, labeled=False)
    p_net.add_argument("--out", help="CSV path (stdout if omitted)")
    p_net.add_argument("--no-fig", action="store_true")
    p_net.set_defaults(func=_cmd_net_curve)

    p_lab = sub.add_parser("lab", help="hard-instance generators and curves")
    lsub = p_lab.add_subparsers(dest="subcommand", required=True)
    p_bayes = lsub.add_parser("bayes-curve")
    p_bayes.add_argument("--b", type=float, required=True)
    p_bayes.add_argument("--kmax", type=int, required=True)
    p_bayes.add_argument("--out", help="CSV path (stdout if omitted)")
    p_bayes.add_argument("--no-fig", action="store_true")
    p_bayes.set_defaults(func=_cmd_bayes_curve)
    p_adv = lsub.add_parser("adversarial-sample")
    p_adv.add_argument("--d", type=int, required=True)
    p_adv.add_argument("--b", type=float, required=True)
    p_adv.add_argument("--p", type=float, required=True)
    p_adv.add_argument("--n", type=int, required=True)
    p_adv.add_argument("--seed", type=int, default=0)
    p_adv.add_argument("--eta", type=float,
                       help="optional noise budget to validate against")
    p_adv.add_argument("--out", required=True, help="point-file CSV path")
    p_adv.set_defaults(func=_cmd_adversarial_sample)

    p_suite = sub.add_parser("run-suite", help="batch experiments from a config")
    p_suite.add_argument("--config", required=True, help="TOML or JSON config")
    p_suite.add_argument("--out-dir", required=True)
    p_suite.add_argument("--no-figures", action="store_true")
    p_suite.set_defaults(func=_cmd_run_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
