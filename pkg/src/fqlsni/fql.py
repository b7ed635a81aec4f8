"""Fuzzy Q-learning: per-rule competing singleton actions with q-values.

Each adapted quantity (the SNI DC gain and time constant of one channel) is
handled by one agent: a 5-rule fuzzy partition of the clipped tracking error,
three candidate singleton actions per rule, and a q-table updated by the
firing-strength-weighted temporal-difference rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import fuzzy
from .errors import ConfigurationError, DomainError
from .ni_core import SniGains, clamp_gamma, clamp_tau

# neutral action first: greedy selection on an untrained (all-zero) table
# resolves ties to the lowest index, which must be a no-op for the
# controller to degenerate exactly to its fixed-gain counterpart.  The
# remaining two actions are ordered so that, after a setpoint jump punishes
# the neutral action, the tie-break favours the stabilising direction:
# raising the DC gain (more loop damping) and lowering the time constant
# (faster filter), never collapsing the gain.
GAMMA_ACTIONS = (0.0, 20.0, -20.0)
TAU_ACTIONS = (0.0, -0.002, 0.002)


@dataclass
class FqlHyperParams:
    """Learning rate, discount, exploration schedule and seeding."""

    eta: float = 0.1
    sigma: float = 0.7
    explore_duration: float = 0.7   # initial pure-exploration time [s]
    epsilon: float = 0.01           # post-exploration exploration probability
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ConfigurationError("eta must be in [0, 1]")
        if not 0.0 <= self.sigma < 1.0:
            raise ConfigurationError("sigma must be in [0, 1)")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigurationError("epsilon must be in [0, 1]")


@dataclass
class RuleQTable:
    """q[i, j]: value of action j in rule i; chosen[i]: last selected index."""

    q: np.ndarray
    chosen: np.ndarray

    @classmethod
    def zeros(cls, n_rules: int, n_actions: int) -> "RuleQTable":
        return cls(q=np.zeros((n_rules, n_actions)),
                   chosen=np.zeros(n_rules, dtype=int))


@dataclass(frozen=True)
class AgentOutputs:
    """Adapted gain increments produced by the two agents of one channel."""

    delta_gamma: float = 0.0
    delta_tau: float = 0.0


def select_actions(w, q: RuleQTable, t: float, hp: FqlHyperParams, rng) -> np.ndarray:
    """Pick one action index per rule.

    Pure uniform exploration while t < explore_duration, then per-rule
    epsilon-greedy with argmax ties broken by lowest index.
    """
    n_rules, n_actions = q.q.shape
    if t < hp.explore_duration:
        return rng.integers(0, n_actions, size=n_rules)
    chosen = np.empty(n_rules, dtype=int)
    for i in range(n_rules):
        if hp.epsilon > 0.0 and rng.random() < hp.epsilon:
            chosen[i] = rng.integers(0, n_actions)
        else:
            chosen[i] = int(np.argmax(q.q[i]))
    return chosen


def global_action(w, chosen_consequents) -> float:
    """Crisp action: firing-strength-weighted average of the chosen singletons."""
    return fuzzy.defuzzify(w, chosen_consequents)


def q_of_state_action(w, q: RuleQTable, chosen) -> float:
    """Composed Q(state, action) from the chosen entries."""
    vals = q.q[np.arange(len(chosen)), chosen]
    return fuzzy.defuzzify(w, vals)


def max_q_of_state(w, q: RuleQTable) -> float:
    """Composed max Q: weighted average of per-rule row maxima."""
    return fuzzy.defuzzify(w, q.q.max(axis=1))


def reward(e_next: float, e_curr: float) -> float:
    """Tracking-improvement reward in (-1, 1); positive when |e| decreased.

    Errors are clipped to the fuzzy input universe before evaluation.
    """
    en = abs(fuzzy.clip_input(e_next))
    ec = abs(fuzzy.clip_input(e_curr))
    return 1.0 / (1.0 + en) - 1.0 / (1.0 + ec)


def update(q: RuleQTable, w_curr, w_next, chosen, r: float,
           hp: FqlHyperParams) -> RuleQTable:
    """Temporal-difference update distributed by normalized firing strengths.

    Only the chosen entry of each fired rule changes; the increment of rule i
    is eta * dQ * w_i / sum(w).
    """
    dq = r + hp.sigma * max_q_of_state(w_next, q) - q_of_state_action(w_curr, q, chosen)
    w = np.asarray(w_curr, dtype=float)
    total = w.sum()
    if total <= 0.0:
        raise DomainError("degenerate firing strengths")
    new_q = q.q.copy()
    idx = np.arange(len(chosen))
    new_q[idx, chosen] = new_q[idx, chosen] + hp.eta * dq * w / total
    return RuleQTable(q=new_q, chosen=np.asarray(chosen, dtype=int).copy())


def discounted_return(rewards, sigma: float) -> float:
    """Accumulated discounted reward over an episode (diagnostic)."""
    return math.fsum(r * sigma ** t for t, r in enumerate(rewards))


def apply_gain_update(gains: SniGains, phi: AgentOutputs, dt: float) -> SniGains:
    """Integrate the agent increments (units: gain per second) and re-derive beta.

    gamma and tau are clamped to their boxes; beta follows the managed rule
    beta = gamma + 1, which keeps the controller DC gain at -1.
    """
    gamma = clamp_gamma(gains.gamma + phi.delta_gamma * dt)
    tau = clamp_tau(gains.tau + phi.delta_tau * dt)
    return SniGains.managed(gamma=gamma, tau=tau)


@dataclass
class FqlAgent:
    """One learning agent: fuzzy partition plus q-table for a single output.

    The select -> act -> reward -> update cycle is strictly sequential;
    `begin_step` records the context the next `learn` call consumes.
    """

    actions: tuple
    hp: FqlHyperParams
    rng: np.random.Generator
    rules: fuzzy.RuleBase = field(default_factory=fuzzy.RuleBase.default)
    table: RuleQTable = None
    _w: tuple = None
    _chosen: np.ndarray = None

    def __post_init__(self):
        if self.table is None:
            self.table = RuleQTable.zeros(len(self.rules), len(self.actions))

    def begin_step(self, zeta: float, t: float) -> float:
        """Select actions for the current state; returns the crisp increment."""
        w = self.rules.fire(zeta)
        chosen = select_actions(w, self.table, t, self.hp, self.rng)
        self._w, self._chosen = w, chosen
        self.table.chosen = chosen
        return global_action(w, tuple(self.actions[j] for j in chosen))

    def learn(self, r: float, zeta_next: float) -> None:
        """Apply the q-update using the reward and the next state's firing."""
        if self._w is None:
            return
        w_next = self.rules.fire(zeta_next)
        self.table = update(self.table, self._w, w_next, self._chosen, r, self.hp)
