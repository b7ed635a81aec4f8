"""Scenario configuration: reference profiles, controller wiring, file I/O.

Configurations are flat sectioned key=value text files (INI syntax).  Every
field has a default, so a minimal file only needs the sections it changes.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field, replace

from . import controllers as ctl
from .disturbances import DrydenConfig, OneMinusCosConfig, ParamBias
from .errors import ConfigurationError
from .fql import FqlHyperParams
from .plant import QuadParams

CHANNELS = ("roll", "pitch", "yaw", "z")

REFERENCE_KINDS = ("sine", "square", "step", "constant_after_delay")

_AXES = {"x": 0, "y": 1, "z": 2}


@dataclass(frozen=True)
class ReferenceProfile:
    """Setpoint generator for one channel."""

    kind: str = "step"
    amplitude: float = 0.0
    period: float = 1.0
    offset: float = 0.0
    start: float = 0.0

    def __post_init__(self):
        if self.kind not in REFERENCE_KINDS:
            raise ConfigurationError(f"unknown reference kind {self.kind!r}")
        if self.kind in ("sine", "square") and not self.period > 0.0:
            raise ConfigurationError("periodic references need period > 0")

    def sample(self, t: float) -> float:
        if t < self.start:
            return self.offset
        tt = t - self.start
        if self.kind == "sine":
            return self.offset + self.amplitude * math.sin(2.0 * math.pi * tt / self.period)
        if self.kind == "square":
            phase = (tt / self.period) % 1.0
            return self.offset + (self.amplitude if phase < 0.5 else -self.amplitude)
        # step / constant_after_delay
        return self.offset + self.amplitude


@dataclass
class SniDefaults:
    gamma0: float = 5.0
    tau0: float = 0.05
    beta0: float = 6.0
    output_gain: float = ctl.DEFAULT_OUTPUT_GAIN


@dataclass
class FuzzySniDefaults:
    gamma_table: tuple = ctl.DEFAULT_GAMMA_TABLE
    tau_table: tuple = ctl.DEFAULT_TAU_TABLE


@dataclass
class ScenarioConfig:
    """Everything a reproducible run needs."""

    duration: float = 20.0
    dt: float = 0.01
    seed: int = 0
    out_dir: str = "out"

    references: dict = field(default_factory=lambda: {
        "roll": ReferenceProfile(kind="sine", amplitude=0.5, period=4.0),
        "pitch": ReferenceProfile(kind="square", amplitude=0.5, period=5.0),
        "yaw": ReferenceProfile(kind="step", amplitude=0.5, start=1.0),
        "z": ReferenceProfile(kind="constant_after_delay", amplitude=1.5, start=1.0),
    })
    controller_kinds: dict = field(default_factory=lambda: {
        ch: "fuzzy_ql_sni" for ch in CHANNELS})

    params: QuadParams = field(default_factory=QuadParams)
    sni: SniDefaults = field(default_factory=SniDefaults)
    pid: ctl.PidGains = field(default_factory=ctl.PidGains)
    fuzzy_sni: FuzzySniDefaults = field(default_factory=FuzzySniDefaults)
    fql: FqlHyperParams = field(default_factory=FqlHyperParams)

    dryden_enabled: bool = False
    dryden: DrydenConfig = field(default_factory=DrydenConfig)
    gust_enabled: bool = False
    gust: OneMinusCosConfig = field(default_factory=OneMinusCosConfig)
    bias: ParamBias = field(default_factory=lambda: ParamBias(1.0, 1.0, 1.0, 1.0))
    wind_kappa: float = 0.002

    qdump_interval: float = 0.0    # seconds between q-table CSV dumps; 0 = off

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ConfigurationError("dt must be positive")
        if not self.duration >= self.dt:
            raise ConfigurationError("duration must be at least one sample")
        for ch, kind in self.controller_kinds.items():
            if ch not in CHANNELS:
                raise ConfigurationError(f"unknown channel {ch!r}")
            if kind not in ctl.CONTROLLER_KINDS:
                raise ConfigurationError(f"unknown controller kind {kind!r}")

    def n_steps(self) -> int:
        return int(round(self.duration / self.dt))

    def with_seed(self, seed: int) -> "ScenarioConfig":
        return replace(self, seed=seed)


def _floats(text: str) -> tuple:
    return tuple(float(x) for x in text.replace(",", " ").split())


def load_config(path: str) -> ScenarioConfig:
    """Parse a scenario configuration file."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = cp.read(path)
    if not read:
        raise ConfigurationError(f"cannot read config file {path!r}")

    cfg = ScenarioConfig()

    if cp.has_section("scenario"):
        s = cp["scenario"]
        cfg.duration = s.getfloat("duration", cfg.duration)
        cfg.dt = s.getfloat("dt", cfg.dt)
        cfg.seed = s.getint("seed", cfg.seed)
        cfg.out_dir = s.get("out_dir", cfg.out_dir)

    for ch in CHANNELS:
        sec = f"reference.{ch}"
        if cp.has_section(sec):
            s = cp[sec]
            base = cfg.references[ch]
            cfg.references[ch] = ReferenceProfile(
                kind=s.get("kind", base.kind),
                amplitude=s.getfloat("amplitude", base.amplitude),
                period=s.getfloat("period", base.period),
                offset=s.getfloat("offset", base.offset),
                start=s.getfloat("start", base.start),
            )

    if cp.has_section("controllers"):
        for ch in CHANNELS:
            if cp.has_option("controllers", ch):
                cfg.controller_kinds[ch] = cp.get("controllers", ch)

    if cp.has_section("plant"):
        s = cp["plant"]
        kwargs = {}
        for name in ("m", "Ix", "Iy", "Iz", "Jr", "Km", "Kf", "L", "g",
                     "Cdx", "Cdy", "Cdz", "Cax", "Cay", "Caz"):
            if s.get(name) is not None:
                kwargs[name] = s.getfloat(name)
        cfg.params = replace(cfg.params, **kwargs)

    if cp.has_section("sni"):
        s = cp["sni"]
        cfg.sni = SniDefaults(
            gamma0=s.getfloat("gamma0", cfg.sni.gamma0),
            tau0=s.getfloat("tau0", cfg.sni.tau0),
            beta0=s.getfloat("beta0", cfg.sni.beta0),
            output_gain=s.getfloat("output_gain", cfg.sni.output_gain),
        )

    if cp.has_section("pid"):
        s = cp["pid"]
        cfg.pid = ctl.PidGains(
            kp=s.getfloat("kp", cfg.pid.kp),
            ki=s.getfloat("ki", cfg.pid.ki),
            kd=s.getfloat("kd", cfg.pid.kd),
            tf=s.getfloat("tf", cfg.pid.tf),
            integrator_limit=s.getfloat("integrator_limit", cfg.pid.integrator_limit),
        )

    if cp.has_section("fuzzy_sni"):
        s = cp["fuzzy_sni"]
        cfg.fuzzy_sni = FuzzySniDefaults(
            gamma_table=_floats(s.get("gamma_table")) if s.get("gamma_table")
            else cfg.fuzzy_sni.gamma_table,
            tau_table=_floats(s.get("tau_table")) if s.get("tau_table")
            else cfg.fuzzy_sni.tau_table,
        )

    if cp.has_section("fql"):
        s = cp["fql"]
        cfg.fql = FqlHyperParams(
            eta=s.getfloat("eta", cfg.fql.eta),
            sigma=s.getfloat("sigma", cfg.fql.sigma),
            explore_duration=s.getfloat("explore_duration", cfg.fql.explore_duration),
            epsilon=s.getfloat("epsilon", cfg.fql.epsilon),
            seed=cfg.seed,
        )
        cfg.qdump_interval = s.getfloat("qdump_interval", cfg.qdump_interval)

    if cp.has_section("dryden"):
        s = cp["dryden"]
        cfg.dryden_enabled = s.getboolean("enabled", fallback=True)
        cfg.dryden = DrydenConfig(
            V=s.getfloat("V", cfg.dryden.V),
            Lu=s.getfloat("Lu", cfg.dryden.Lu),
            Lv=s.getfloat("Lv", cfg.dryden.Lv),
            Lw=s.getfloat("Lw", cfg.dryden.Lw),
            sigma_u=s.getfloat("sigma_u", cfg.dryden.sigma_u),
            sigma_v=s.getfloat("sigma_v", cfg.dryden.sigma_v),
            sigma_w=s.getfloat("sigma_w", cfg.dryden.sigma_w),
            cap=s.getfloat("cap", cfg.dryden.cap),
            seed=cfg.seed,
        )

    if cp.has_section("gust"):
        s = cp["gust"]
        cfg.gust_enabled = s.getboolean("enabled", fallback=True)
        axis = s.get("axis", "x").strip().lower()
        cfg.gust = OneMinusCosConfig(
            amplitude=s.getfloat("amplitude", cfg.gust.amplitude),
            duration=s.getfloat("duration", cfg.gust.duration),
            start=s.getfloat("start", cfg.gust.start),
            axis=_AXES.get(axis, int(axis) if axis.isdigit() else 0),
        )

    if cp.has_section("bias"):
        s = cp["bias"]
        cfg.bias = ParamBias(
            m=s.getfloat("m", 1.0),
            Ix=s.getfloat("Ix", 1.0),
            Iy=s.getfloat("Iy", 1.0),
            Iz=s.getfloat("Iz", 1.0),
        )

    if cp.has_section("wind"):
        cfg.wind_kappa = cp["wind"].getfloat("kappa", cfg.wind_kappa)

    cfg.__post_init__()
    return cfg
