"""SNI controller realization and stability-predicate tests."""

import math
from types import SimpleNamespace

import numpy as np
import pytest

from fqlsni.errors import ConfigurationError, DomainError
from fqlsni.ni_core import (GAMMA_BOUNDS, TAU_BOUNDS, SniGains, SniState,
                            clamp_gamma, clamp_tau, dc_gain_stability,
                            default_frequency_grid, lemma1_check,
                            sni_frequency_condition, sni_step)


class TestGains:
    def test_managed_rule(self):
        g = SniGains.managed(5.0, 0.1)
        assert g.beta == 6.0

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            SniGains(gamma=0.0, tau=0.1, beta=1.0)
        with pytest.raises(ConfigurationError):
            SniGains(gamma=1.0, tau=1e-4, beta=2.0)


class TestSniStep:
    GAINS = SniGains(gamma=5.0, tau=0.1, beta=6.0)

    def test_pole_value(self):
        st, _ = sni_step(SniState(), 1.0, self.GAINS, 0.01)
        a = math.exp(-0.1)
        assert a == pytest.approx(0.904837, abs=1e-6)
        assert st.xf == pytest.approx(1.0 - a)

    def test_zero_input_forever(self):
        st = SniState()
        for _ in range(100):
            st, u = sni_step(st, 0.0, self.GAINS, 0.01)
            assert st.xf == 0.0 and u == 0.0

    def test_dc_gain_minus_one_when_managed(self):
        g = SniGains.managed(5.0, 0.1)
        st = SniState()
        for _ in range(5000):
            st, u = sni_step(st, 1.0, g, 0.01)
        assert u == pytest.approx(g.gamma - g.beta, abs=1e-9)
        assert u == pytest.approx(-1.0, abs=1e-9)

    def test_matches_continuous_step_response(self):
        # constant input: xf(t) = 1 - exp(-t/tau) at the sample instants
        st = SniState()
        dt, tau = 0.01, 0.1
        g = SniGains(gamma=5.0, tau=tau, beta=6.0)
        for k in range(1, 301):
            st, _ = sni_step(st, 1.0, g, dt)
            assert st.xf == pytest.approx(1.0 - math.exp(-k * dt / tau), abs=1e-10)

    def test_invalid_dt(self):
        with pytest.raises(DomainError):
            sni_step(SniState(), 1.0, self.GAINS, 0.0)


class TestFrequencyCondition:
    def test_reference_gains(self):
        g = SniGains(gamma=5.0, tau=0.1, beta=6.0)
        assert sni_frequency_condition(g, default_frequency_grid())

    def test_closed_form_cross_check(self):
        omega = default_frequency_grid()
        for gamma, tau in [(0.1, 1e-3), (5.0, 0.1), (100.0, 1.0), (37.0, 0.02)]:
            n = gamma / (1j * omega * tau + 1.0) - (gamma + 1.0)
            direct = (1j * (n - np.conj(n))).real
            closed = 2.0 * gamma * omega * tau / (1.0 + omega ** 2 * tau ** 2)
            assert np.max(np.abs(direct - closed)
                          / np.maximum(np.abs(closed), 1e-30)) < 1e-12

    def test_holds_over_whole_clamp_box(self):
        omega = default_frequency_grid()
        for gamma in np.linspace(*GAMMA_BOUNDS, 20):
            for tau in np.linspace(*TAU_BOUNDS, 20):
                g = SniGains(gamma=float(gamma), tau=float(tau), beta=gamma + 1.0)
                assert sni_frequency_condition(g, omega)

    def test_negative_and_zero_gamma_fail(self):
        # the constructor forbids these, so probe the predicate directly
        assert not sni_frequency_condition(
            SimpleNamespace(gamma=-1.0, tau=0.1, beta=0.0), default_frequency_grid())
        assert not sni_frequency_condition(
            SimpleNamespace(gamma=0.0, tau=0.1, beta=0.0), default_frequency_grid())

    def test_grid_validation(self):
        g = SniGains(gamma=5.0, tau=0.1, beta=6.0)
        with pytest.raises(DomainError):
            sni_frequency_condition(g, [])
        with pytest.raises(DomainError):
            sni_frequency_condition(g, [0.0, 1.0])


class TestStabilityPredicates:
    def test_dc_gain_stability(self):
        assert dc_gain_stability(5.0, 6.0)
        assert not dc_gain_stability(5.0, 5.0)
        assert not dc_gain_stability(2.0, 1.0)

    def test_managed_rule_always_stable(self):
        for gamma in np.linspace(*GAMMA_BOUNDS, 50):
            assert dc_gain_stability(gamma, gamma + 1.0)

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            dc_gain_stability(float("nan"), 1.0)

    def test_lemma1_diagonal(self):
        assert lemma1_check(np.diag([1e6] * 4), np.diag([-1.0] * 4))
        assert not lemma1_check(np.eye(4), np.eye(4))

    def test_lemma1_random_diagonal(self):
        rng = np.random.default_rng(17)
        for _ in range(100):
            p = np.diag(rng.uniform(0.1, 1e6, size=4))
            n = np.diag(-rng.uniform(0.1, 10.0, size=4))
            assert lemma1_check(p, n)

    def test_lemma1_validation(self):
        with pytest.raises(DomainError):
            lemma1_check(np.ones((2, 3)), np.ones((2, 3)))
        with pytest.raises(DomainError):
            lemma1_check(np.eye(2), np.eye(3))


class TestClamps:
    def test_gamma(self):
        lo, hi = GAMMA_BOUNDS
        assert clamp_gamma(lo - 1.0) == lo
        assert clamp_gamma(hi + 1.0) == hi
        assert clamp_gamma(5.0) == 5.0

    def test_tau(self):
        lo, hi = TAU_BOUNDS
        assert clamp_tau(0.0) == lo
        assert clamp_tau(2.0) == hi
        assert clamp_tau(0.05) == 0.05
