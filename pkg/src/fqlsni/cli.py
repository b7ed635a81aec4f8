"""Command-line interface: run, sweep, check-sni, replay."""

from __future__ import annotations

import argparse
import filecmp
import os
import sys
import tempfile
from dataclasses import replace

from . import harness, ni_core
from .config import CHANNELS, load_config
from .errors import ConfigurationError, SimulationDiverged


def _print_metrics(m: harness.RunMetrics) -> None:
    print(f"{'channel':8s} {'RMSE':>12s} {'SO':>12s} {'t_s [s]':>10s} {'J':>12s}")
    for ch in CHANNELS:
        flag = "" if m.settled[ch] else " (never settled)"
        print(f"{ch:8s} {m.rmse[ch]:12.6f} {m.steady_offset[ch]:12.6f} "
              f"{m.settle_time[ch]:10.3f} {m.discounted_return[ch]:12.6f}{flag}")


def cmd_run(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    out_dir = args.out or cfg.out_dir
    try:
        m = harness.run_scenario(cfg, out_dir=out_dir)
    except SimulationDiverged as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _print_metrics(m)
    print(f"trajectory: {m.trajectory_path}")
    if not args.no_plots:
        from . import report
        for path in report.render_all(m, out_dir):
            print(f"figure: {path}")
    return 0


def cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    values = [float(v) for v in args.values.split(",")]
    out_path = os.path.join(args.out or cfg.out_dir, f"sweep_{args.param}.csv")
    rows = harness.sweep(cfg, args.param, values, out_path=out_path)
    print(f"{args.param:>10s} " + " ".join(f"rmse_{c:>8s}" for c in CHANNELS))
    for val, r in rows:
        print(f"{val:10.4f} " + " ".join(f"{r[c]:13.6f}" for c in CHANNELS))
    print(f"table: {out_path}")
    return 0


def cmd_check_sni(args) -> int:
    gains = ni_core.SniGains(gamma=args.gamma, tau=args.tau, beta=args.beta)
    sni_ok = ni_core.sni_frequency_condition(gains, ni_core.default_frequency_grid())
    dc_ok = ni_core.dc_gain_stability(args.gamma, args.beta)
    print(f"SNI frequency condition: {'pass' if sni_ok else 'FAIL'}")
    print(f"DC-gain stability (gamma < beta): {'pass' if dc_ok else 'FAIL'}")
    return 0 if (sni_ok and dc_ok) else 1


def cmd_replay(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    with tempfile.TemporaryDirectory() as tmp:
        a = os.path.join(tmp, "a")
        b = os.path.join(tmp, "b")
        try:
            harness.run_scenario(replace(cfg), out_dir=a, keep_history=False)
            harness.run_scenario(replace(cfg), out_dir=b, keep_history=False)
        except SimulationDiverged as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        same = filecmp.cmp(os.path.join(a, "trajectory.csv"),
                           os.path.join(b, "trajectory.csv"), shallow=False)
    print("replay: identical" if same else "replay: MISMATCH")
    return 0 if same else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fqlsni",
                                description="Quadrotor SNI tracking-control simulator")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one scenario and write CSV + figures")
    r.add_argument("config")
    r.add_argument("--seed", type=int, default=None)
    r.add_argument("--out", default=None)
    r.add_argument("--no-plots", action="store_true")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="hyperparameter sweep, one run per value")
    s.add_argument("config")
    s.add_argument("--param", required=True, choices=harness.SWEEPABLE)
    s.add_argument("--values", required=True, help="comma-separated list")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_sweep)

    c = sub.add_parser("check-sni", help="check SNI property and DC-gain stability")
    c.add_argument("gamma", type=float)
    c.add_argument("tau", type=float)
    c.add_argument("beta", type=float)
    c.set_defaults(func=cmd_check_sni)

    y = sub.add_parser("replay", help="run twice and verify bit-identical output")
    y.add_argument("config")
    y.add_argument("--seed", type=int, default=None)
    y.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
