"""Scenario orchestration: the closed tracking loop, metrics and CSV reporting."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace

import numpy as np

from . import controllers as ctl
from . import disturbances, fb_lin, metrics, plant
from .config import CHANNELS, ScenarioConfig
from .errors import ConfigurationError, SimulationDiverged, SingularityError
from .ni_core import SniGains

SCHEMA_HEADER = "# fqlsni trajectory schema v1"

COLUMNS = (
    ["time"]
    + [f"ref_{c}" for c in CHANNELS]
    + [f"out_{c}" for c in CHANNELS]
    + [f"err_{c}" for c in CHANNELS]
    + ["U1", "U2", "U3", "U4"]
    + [f"v_{c}" for c in CHANNELS]
    + [f"gamma_{c}" for c in CHANNELS]
    + [f"tau_{c}" for c in CHANNELS]
    + ["wind_x", "wind_y", "wind_z"]
    + [f"reward_{c}" for c in CHANNELS]
)


@dataclass
class RunMetrics:
    """Per-channel tracking metrics and output artifact paths for one run."""

    rmse: dict
    steady_offset: dict
    settle_time: dict
    settled: dict
    discounted_return: dict
    trajectory_path: str | None = None
    diverged: bool = False
    diverged_at: float | None = None
    history: np.ndarray | None = field(default=None, repr=False)

    def column(self, name: str) -> np.ndarray:
        return self.history[:, COLUMNS.index(name)]


def build_controllers(cfg: ScenarioConfig):
    """Instantiate one controller per channel with deterministic seeding.

    The seed tree is spawned in a fixed order regardless of controller kinds,
    so changing one channel's controller does not reshuffle the streams of
    the others.
    """
    ss = np.random.SeedSequence(cfg.seed)
    children = ss.spawn(1 + 2 * len(CHANNELS))
    dryden_rng = np.random.default_rng(children[0])

    out = {}
    for i, ch in enumerate(CHANNELS):
        kind = cfg.controller_kinds[ch]
        gains = SniGains(gamma=cfg.sni.gamma0, tau=cfg.sni.tau0, beta=cfg.sni.beta0)
        if kind == "pid":
            out[ch] = ctl.PidController(cfg.pid)
        elif kind == "sni":
            out[ch] = ctl.FixedSniController(gains, cfg.sni.output_gain)
        elif kind == "fuzzy_sni":
            out[ch] = ctl.FuzzySniController(
                gains, cfg.sni.output_gain,
                gamma_table=cfg.fuzzy_sni.gamma_table,
                tau_table=cfg.fuzzy_sni.tau_table)
        elif kind == "fuzzy_ql_sni":
            out[ch] = ctl.FuzzyQlSniController(
                gains, replace(cfg.fql, seed=cfg.seed),
                rng_gamma=np.random.default_rng(children[1 + 2 * i]),
                rng_tau=np.random.default_rng(children[2 + 2 * i]),
                output_gain=cfg.sni.output_gain)
        else:
            raise ConfigurationError(f"unknown controller kind {kind!r}")
    return out, dryden_rng


def _measurement(state: plant.QuadState, channel: str) -> float:
    return {"roll": state.roll, "pitch": state.pitch,
            "yaw": state.yaw, "z": state.z}[channel]


def _write_trajectory(path: str, rows) -> None:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w") as fh:
        fh.write(SCHEMA_HEADER + "\n")
        fh.write(",".join(COLUMNS) + "\n")
        for row in rows:
            fh.write(",".join(repr(v) for v in row) + "\n")


def _dump_qtables(out_dir: str, controllers, t: float) -> None:
    for ch, c in controllers.items():
        if not isinstance(c, ctl.FuzzyQlSniController):
            continue
        for name, agent in (("gamma", c.agent_gamma), ("tau", c.agent_tau)):
            path = os.path.join(out_dir, f"qtable_{ch}_{name}_t{t:07.2f}.csv")
            with open(path, "w") as fh:
                fh.write("rule," + ",".join(f"a{j}" for j in
                                            range(agent.table.q.shape[1])) + "\n")
                for i, label in enumerate(agent.rules.labels):
                    fh.write(label + "," +
                             ",".join(repr(v) for v in agent.table.q[i]) + "\n")


def run_scenario(cfg: ScenarioConfig, out_dir: str | None = None,
                 write_outputs: bool = True, keep_history: bool = True) -> RunMetrics:
    """Run the closed loop and compute metrics.

    On divergence the partial trajectory is flushed to disk and the
    SimulationDiverged error is re-raised with the failure time attached.
    """
    out_dir = out_dir if out_dir is not None else cfg.out_dir
    controllers, dryden_rng = build_controllers(cfg)
    nominal = cfg.params
    plant_params = disturbances.apply_bias(nominal, cfg.bias)
    coeffs = fb_lin.FlCoefficients.from_params(nominal)

    dryden = (disturbances.DrydenModel(cfg.dryden, cfg.dt, dryden_rng)
              if cfg.dryden_enabled else None)

    state = plant.QuadState()
    dt = cfg.dt
    n = cfg.n_steps()
    rows = []
    traj_path = os.path.join(out_dir, "trajectory.csv") if write_outputs else None
    next_dump = cfg.qdump_interval if cfg.qdump_interval > 0.0 else None
    if next_dump is not None and write_outputs:
        os.makedirs(out_dir, exist_ok=True)

    error = None
    for k in range(n):
        t = k * dt
        refs = {ch: cfg.references[ch].sample(t) for ch in CHANNELS}
        outs = {ch: _measurement(state, ch) for ch in CHANNELS}
        errs = {ch: refs[ch] - outs[ch] for ch in CHANNELS}

        v = {ch: controllers[ch].step(errs[ch], t, dt) for ch in CHANNELS}
        virtual = fb_lin.VirtualInput(v1=v["z"], v2=v["roll"],
                                      v3=v["pitch"], v4=v["yaw"])

        wind = (0.0, 0.0, 0.0)
        if dryden is not None:
            wind = dryden.step()
        if cfg.gust_enabled:
            pulse = disturbances.one_minus_cos(t, cfg.gust)
            wind = tuple(w + (pulse if i == cfg.gust.axis else 0.0)
                         for i, w in enumerate(wind))
        force, torque = disturbances.wind_to_disturbance(
            wind, plant_params, cfg.wind_kappa)

        try:
            u = fb_lin.linearize(virtual, state, nominal, coeffs)
            state = plant.step(state, u, plant_params, force, torque, dt, t=t)
        except (SingularityError, SimulationDiverged) as exc:
            error = SimulationDiverged(f"run diverged at t={t:.2f}s: {exc}", t=t)
            break

        gains = {ch: (controllers[ch].gains if hasattr(controllers[ch], "gains")
                      and isinstance(controllers[ch].gains, SniGains) else None)
                 for ch in CHANNELS}
        rows.append(
            [t]
            + [refs[c] for c in CHANNELS]
            + [outs[c] for c in CHANNELS]
            + [errs[c] for c in CHANNELS]
            + list(u.as_tuple())
            + [v[c] for c in CHANNELS]
            + [gains[c].gamma if gains[c] else 0.0 for c in CHANNELS]
            + [gains[c].tau if gains[c] else 0.0 for c in CHANNELS]
            + list(wind)
            + [getattr(controllers[c], "last_reward", 0.0) for c in CHANNELS]
        )

        if next_dump is not None and write_outputs and t >= next_dump:
            _dump_qtables(out_dir, controllers, t)
            next_dump += cfg.qdump_interval

    if write_outputs:
        _write_trajectory(traj_path, rows)
        if cfg.qdump_interval > 0.0:
            _dump_qtables(out_dir, controllers, n * dt)
    if error is not None:
        raise error

    hist = np.array(rows)
    rmse_d, so_d, ts_d, settled_d, ret_d = {}, {}, {}, {}, {}
    for ch in CHANNELS:
        e = hist[:, COLUMNS.index(f"err_{ch}")]
        r = hist[:, COLUMNS.index(f"ref_{ch}")]
        rmse_d[ch] = metrics.rmse(e)
        so_d[ch] = metrics.steady_offset(e) if len(e) > metrics.STEADY_WINDOW else float(
            np.max(np.abs(e)))
        ts_d[ch], settled_d[ch] = metrics.settle_time(e, metrics.settle_band(r), dt)
        c = controllers[ch]
        ret_d[ch] = (c.discounted_return()
                     if isinstance(c, ctl.FuzzyQlSniController) else 0.0)

    return RunMetrics(rmse=rmse_d, steady_offset=so_d, settle_time=ts_d,
                      settled=settled_d, discounted_return=ret_d,
                      trajectory_path=traj_path, history=hist if keep_history else None)


SWEEPABLE = ("eta", "sigma", "explore_duration")


def sweep(cfg: ScenarioConfig, param: str, values, out_path: str | None = None):
    """Re-run the scenario once per hyperparameter value; returns rows of RMSE.

    Each row is (value, {channel: rmse}).  Runs share the configured seed, so
    any row can be replayed bit-identically.
    """
    if param not in SWEEPABLE:
        raise ConfigurationError(f"sweep parameter must be one of {SWEEPABLE}")
    rows = []
    for val in values:
        run_cfg = replace(cfg, fql=replace(cfg.fql, **{param: float(val)}))
        m = run_scenario(run_cfg, write_outputs=False, keep_history=False)
        rows.append((float(val), dict(m.rmse)))
    if out_path is not None:
        os.makedirs(os.path.dirname(out_path) or ".", exist_ok=True)
        with open(out_path, "w") as fh:
            fh.write("# fqlsni sweep schema v1\n")
            fh.write(f"{param}," + ",".join(f"rmse_{c}" for c in CHANNELS) + "\n")
            for val, r in rows:
                fh.write(repr(val) + "," +
                         ",".join(repr(r[c]) for c in CHANNELS) + "\n")
    return rows
