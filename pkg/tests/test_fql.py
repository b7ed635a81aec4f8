"""Fuzzy Q-learning tests: selection, composition, reward, update, gains."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fqlsni import fql
from fqlsni.errors import ConfigurationError
from fqlsni.fuzzy import RuleBase
from fqlsni.ni_core import GAMMA_BOUNDS, TAU_BOUNDS, SniGains

HP = fql.FqlHyperParams()
RULES = RuleBase.default()


def uniform_w(n=5):
    return tuple(1.0 for _ in range(n))


class TestHyperParams:
    def test_defaults(self):
        assert HP.eta == 0.1 and HP.sigma == 0.7
        assert HP.explore_duration == 0.7 and HP.epsilon == 0.01

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            fql.FqlHyperParams(eta=1.5)
        with pytest.raises(ConfigurationError):
            fql.FqlHyperParams(sigma=1.0)
        with pytest.raises(ConfigurationError):
            fql.FqlHyperParams(epsilon=-0.1)


class TestSelectActions:
    def test_pure_exploration_is_uniform(self):
        rng = np.random.default_rng(0)
        q = fql.RuleQTable.zeros(1, 3)
        counts = np.zeros(3)
        n = 10_000
        for _ in range(n):
            counts[fql.select_actions(uniform_w(1), q, 0.0, HP, rng)[0]] += 1
        assert np.all(np.abs(counts / n - 1.0 / 3.0) < 0.02)

    def test_greedy_argmax(self):
        hp = fql.FqlHyperParams(epsilon=0.0)
        q = fql.RuleQTable.zeros(1, 3)
        q.q[0] = (0.5, -1.0, 0.2)
        rng = np.random.default_rng(1)
        assert fql.select_actions(uniform_w(1), q, 10.0, hp, rng)[0] == 0

    def test_ties_break_to_lowest_index(self):
        hp = fql.FqlHyperParams(epsilon=0.0)
        q = fql.RuleQTable.zeros(2, 3)
        rng = np.random.default_rng(2)
        assert list(fql.select_actions(uniform_w(2), q, 10.0, hp, rng)) == [0, 0]

    def test_epsilon_rate(self):
        q = fql.RuleQTable.zeros(1, 3)
        q.q[0] = (1.0, 0.0, 0.0)
        rng = np.random.default_rng(3)
        n = 100_000
        non_argmax = sum(
            fql.select_actions(uniform_w(1), q, 10.0, HP, rng)[0] != 0
            for _ in range(n))
        # P(non-argmax) = epsilon * 2/3; binomial std ~ 2.6e-4
        assert non_argmax / n == pytest.approx(HP.epsilon * 2.0 / 3.0, abs=1.5e-3)


class TestComposition:
    def test_global_action_single_rule(self):
        assert fql.global_action((0.0, 1.0), (-20.0, 20.0)) == 20.0

    def test_global_action_symmetry(self):
        assert fql.global_action((1.0, 1.0), (-20.0, 20.0)) == 0.0

    def test_global_action_arithmetic(self):
        assert fql.global_action((1.0, 3.0), (-20.0, 0.0)) == pytest.approx(-5.0)

    def test_q_of_state_action(self):
        q = fql.RuleQTable.zeros(2, 3)
        q.q[0, 1] = 1.0
        q.q[1, 2] = 3.0
        got = fql.q_of_state_action((0.5, 0.5), q, np.array([1, 2]))
        assert got == pytest.approx(2.0)
        assert fql.q_of_state_action((1.0, 0.0) + (0.0,) * 0, q,
                                     np.array([1, 0])) == pytest.approx(1.0)

    def test_q_of_state_action_zero_table(self):
        q = fql.RuleQTable.zeros(5, 3)
        assert fql.q_of_state_action(uniform_w(), q, np.zeros(5, dtype=int)) == 0.0

    def test_max_q_of_state(self):
        q = fql.RuleQTable.zeros(2, 3)
        q.q[0] = (0.1, 0.9, -1.0)
        q.q[1] = (-0.5, 0.0, 0.3)
        assert fql.max_q_of_state((1.0, 0.0), q) == pytest.approx(0.9)
        assert fql.max_q_of_state((1.0, 3.0), q) == pytest.approx(
            (0.9 + 3.0 * 0.3) / 4.0)


class TestReward:
    def test_hand_values(self):
        assert fql.reward(0.0, 1.0) == 0.5
        assert fql.reward(0.7, 0.7) == 0.0
        assert fql.reward(2.0, 0.0) == pytest.approx(1.0 / 3.0 - 1.0)

    def test_clipping(self):
        assert fql.reward(10.0, 0.0) == fql.reward(2.0, 0.0)

    @given(st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
           st.floats(min_value=-2.0, max_value=2.0, allow_nan=False))
    def test_bounded_and_sign(self, e_next, e_curr):
        r = fql.reward(e_next, e_curr)
        assert -1.0 < r < 1.0
        assert math.copysign(1.0, r) == math.copysign(
            1.0, abs(e_curr) - abs(e_next)) or r == 0.0


class TestUpdate:
    def test_hand_example(self):
        # single fired rule, zero table, R = 1: dQ = 1, increment eta * 1
        q = fql.RuleQTable.zeros(1, 3)
        out = fql.update(q, (1.0,), (1.0,), np.array([0]), 1.0, HP)
        assert out.q[0, 0] == pytest.approx(0.1)
        assert np.all(out.q[0, 1:] == 0.0)

    def test_zero_reward_zero_table_fixed_point(self):
        q = fql.RuleQTable.zeros(5, 3)
        out = fql.update(q, uniform_w(), uniform_w(),
                         np.zeros(5, dtype=int), 0.0, HP)
        assert np.all(out.q == 0.0)

    def test_weight_distribution(self):
        q = fql.RuleQTable.zeros(2, 3)
        out = fql.update(q, (0.25, 0.75), (0.25, 0.75),
                         np.array([1, 1]), 1.0, HP)
        assert out.q[1, 1] == pytest.approx(3.0 * out.q[0, 1])

    def test_matches_literal_transcription(self):
        rng = np.random.default_rng(23)
        worst = 0.0
        for _ in range(10_000):
            n, j = 5, 3
            q = fql.RuleQTable(q=rng.uniform(-1, 1, size=(n, j)),
                               chosen=np.zeros(n, dtype=int))
            w_curr = rng.uniform(1e-3, 1.0, size=n)
            w_next = rng.uniform(1e-3, 1.0, size=n)
            chosen = rng.integers(0, j, size=n)
            r = rng.uniform(-1.0, 1.0)

            # independent literal evaluation of the TD update
            q_sa = (w_curr @ q.q[np.arange(n), chosen]) / w_curr.sum()
            max_q = (w_next @ q.q.max(axis=1)) / w_next.sum()
            dq = r + HP.sigma * max_q - q_sa
            expected = q.q.copy()
            for i in range(n):
                expected[i, chosen[i]] += HP.eta * dq * w_curr[i] / w_curr.sum()

            out = fql.update(q, w_curr, w_next, chosen, r, HP)
            worst = max(worst, float(np.max(np.abs(out.q - expected))))
            # sparsity: only the chosen entry of each rule may change
            mask = np.ones_like(q.q, dtype=bool)
            mask[np.arange(n), chosen] = False
            assert np.array_equal(out.q[mask], q.q[mask])
        assert worst < 1e-12


class TestReturnAndGains:
    def test_discounted_return(self):
        assert fql.discounted_return([], 0.7) == 0.0
        assert fql.discounted_return([0.4], 0.7) == 0.4
        assert fql.discounted_return([1.0, 1.0, 1.0], 0.5) == pytest.approx(1.75)

    def test_apply_gain_update_zero(self):
        g = SniGains(gamma=5.0, tau=0.1, beta=17.0)
        out = fql.apply_gain_update(g, fql.AgentOutputs(), 0.01)
        assert (out.gamma, out.tau) == (5.0, 0.1)
        assert out.beta == 6.0  # beta re-derived by the managed rule

    def test_apply_gain_update_arithmetic(self):
        g = SniGains.managed(5.0, 0.1)
        out = fql.apply_gain_update(g, fql.AgentOutputs(20.0, 0.002), 0.01)
        assert out.gamma == pytest.approx(5.2)
        assert out.beta == pytest.approx(6.2)
        assert out.tau == pytest.approx(0.10002)

    def test_clamping(self):
        hi = GAMMA_BOUNDS[1]
        g = SniGains.managed(hi, TAU_BOUNDS[0])
        out = fql.apply_gain_update(g, fql.AgentOutputs(20.0, -0.002), 0.01)
        assert out.gamma == hi
        assert out.tau == TAU_BOUNDS[0]


class TestAgent:
    def test_neutral_first_action_ordering(self):
        # untrained tables must be a no-op under greedy selection
        assert fql.GAMMA_ACTIONS[0] == 0.0
        assert fql.TAU_ACTIONS[0] == 0.0

    def test_untrained_greedy_agent_is_noop(self):
        hp = fql.FqlHyperParams(epsilon=0.0, explore_duration=0.0)
        agent = fql.FqlAgent(actions=fql.GAMMA_ACTIONS, hp=hp,
                             rng=np.random.default_rng(0))
        for t in range(50):
            assert agent.begin_step(0.3 * math.sin(t), t * 0.01) == 0.0

    def test_learn_before_begin_is_noop(self):
        agent = fql.FqlAgent(actions=fql.GAMMA_ACTIONS, hp=HP,
                             rng=np.random.default_rng(0))
        agent.learn(1.0, 0.5)
        assert np.all(agent.table.q == 0.0)

    def test_learning_cycle_changes_table(self):
        agent = fql.FqlAgent(actions=fql.GAMMA_ACTIONS, hp=HP,
                             rng=np.random.default_rng(4))
        agent.begin_step(1.0, 0.0)
        agent.learn(0.5, 0.8)
        assert np.any(agent.table.q != 0.0)
