"""The four comparable per-channel tracking controllers.

All controllers map the tracking error of one channel to that channel's
virtual acceleration and expose the same `step(e, t, dt)` interface, so the
scenario runner can swap them by configuration.

The SNI-based controllers drive the double-integrator channel through the
negative of the raw controller output scaled by a loop gain.  With the
managed rule beta = gamma + 1 this wiring is stable for every gain pair in
the clamping box (Routh: all coefficients of tau*s^3 + s^2 + K*beta*tau*s + K
positive and K*beta*tau/tau > K*tau/tau for beta > 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fql, fuzzy, ni_core
from .errors import ConfigurationError
from .ni_core import SniGains, SniState

DEFAULT_OUTPUT_GAIN = 16.0

# antisymmetric expert tables for the non-learning fuzzy-SNI baseline,
# built from the same singleton sets the learning agent uses
DEFAULT_GAMMA_TABLE = (20.0, 20.0, 0.0, -20.0, -20.0)
DEFAULT_TAU_TABLE = (0.002, 0.002, 0.0, -0.002, -0.002)


@dataclass(frozen=True)
class PidGains:
    """Parallel PID with filtered derivative and integrator clamp."""

    # Ziegler-Nichols pattern anchored at Ku = pi^2, Tu = 2 s; see
    # scripts/zn_tune.py for the experiment these numbers come from
    kp: float = 5.9218
    ki: float = 5.9218
    kd: float = 1.4804
    tf: float = 0.02            # derivative filter time constant [s]
    integrator_limit: float = 5.0

    def __post_init__(self):
        if not self.integrator_limit > 0.0:
            raise ConfigurationError("integrator limit must be positive")


class PidController:
    """Conventional PID baseline; output is the virtual acceleration directly."""

    kind = "pid"

    def __init__(self, gains: PidGains):
        self.gains = gains
        self.integ = 0.0
        self.deriv = 0.0
        self.e_prev = None
        self.last_reward = 0.0

    def step(self, e: float, t: float, dt: float) -> float:
        g = self.gains
        self.integ += g.ki * e * dt
        self.integ = min(max(self.integ, -g.integrator_limit), g.integrator_limit)
        raw = 0.0 if self.e_prev is None else (e - self.e_prev) / dt
        self.deriv = (g.tf * self.deriv + dt * raw) / (g.tf + dt)
        self.e_prev = e
        return g.kp * e + self.integ + g.kd * self.deriv


class _SniChannelBase:
    """Shared SNI realization and loop wiring."""

    def __init__(self, gains: SniGains, output_gain: float = DEFAULT_OUTPUT_GAIN):
        self.gains = gains
        self.output_gain = output_gain
        self.state = SniState()
        self.last_reward = 0.0

    def _drive(self, e: float, dt: float) -> float:
        self.state, u = ni_core.sni_step(self.state, e, self.gains, dt)
        return -self.output_gain * u


class FixedSniController(_SniChannelBase):
    """SNI tracking controller with constant gains."""

    kind = "sni"

    def step(self, e: float, t: float, dt: float) -> float:
        return self._drive(e, dt)


class FuzzySniController(_SniChannelBase):
    """SNI controller whose gains drift per an expert Sugeno rule table."""

    kind = "fuzzy_sni"

    def __init__(self, gains: SniGains, output_gain: float = DEFAULT_OUTPUT_GAIN,
                 gamma_table=DEFAULT_GAMMA_TABLE, tau_table=DEFAULT_TAU_TABLE,
                 rules: fuzzy.RuleBase | None = None):
        super().__init__(gains, output_gain)
        self.rules = rules if rules is not None else fuzzy.RuleBase.default()
        if len(gamma_table) != len(self.rules) or len(tau_table) != len(self.rules):
            raise ConfigurationError("rule table length must match the rule base")
        self.gamma_table = tuple(gamma_table)
        self.tau_table = tuple(tau_table)

    def increments(self, e: float) -> fql.AgentOutputs:
        w = self.rules.fire(e)
        return fql.AgentOutputs(
            delta_gamma=fuzzy.defuzzify(w, self.gamma_table),
            delta_tau=fuzzy.defuzzify(w, self.tau_table),
        )

    def step(self, e: float, t: float, dt: float) -> float:
        self.gains = fql.apply_gain_update(self.gains, self.increments(e), dt)
        return self._drive(e, dt)


class FuzzyQlSniController(_SniChannelBase):
    """SNI controller whose gains are adapted online by two fuzzy Q-learning agents.

    The reward for the previous action is computed from the error observed at
    the current sample, so each step first closes the pending learning cycle
    and then selects new actions.
    """

    kind = "fuzzy_ql_sni"

    def __init__(self, gains: SniGains, hp: fql.FqlHyperParams,
                 rng_gamma: np.random.Generator, rng_tau: np.random.Generator,
                 output_gain: float = DEFAULT_OUTPUT_GAIN):
        super().__init__(gains, output_gain)
        self.hp = hp
        self.agent_gamma = fql.FqlAgent(actions=fql.GAMMA_ACTIONS, hp=hp, rng=rng_gamma)
        self.agent_tau = fql.FqlAgent(actions=fql.TAU_ACTIONS, hp=hp, rng=rng_tau)
        self.e_prev = None
        self.rewards = []

    def step(self, e: float, t: float, dt: float) -> float:
        if self.e_prev is not None:
            r = fql.reward(e, self.e_prev)
            self.last_reward = r
            self.rewards.append(r)
            self.agent_gamma.learn(r, e)
            self.agent_tau.learn(r, e)
        dg = self.agent_gamma.begin_step(e, t)
        dtau = self.agent_tau.begin_step(e, t)
        self.gains = fql.apply_gain_update(
            self.gains, fql.AgentOutputs(delta_gamma=dg, delta_tau=dtau), dt)
        assert ni_core.dc_gain_stability(self.gains.gamma, self.gains.beta)
        self.e_prev = e
        return self._drive(e, dt)

    def discounted_return(self) -> float:
        return fql.discounted_return(self.rewards, self.hp.sigma)


CONTROLLER_KINDS = ("pid", "sni", "fuzzy_sni", "fuzzy_ql_sni")
