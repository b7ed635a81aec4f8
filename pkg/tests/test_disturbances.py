"""Disturbance generator tests: wind statistics, gust pulse, parameter bias."""

import math

import numpy as np
import pytest
from scipy import integrate

from fqlsni.disturbances import (DrydenConfig, DrydenModel, OneMinusCosConfig,
                                 ParamBias, apply_bias, one_minus_cos,
                                 wind_to_disturbance)
from fqlsni.errors import ConfigurationError
from fqlsni.plant import QuadParams

DT = 0.01


def make_model(seed=0, **kwargs):
    return DrydenModel(DrydenConfig(**kwargs), DT,
                       np.random.default_rng(seed))


class TestDryden:
    def test_zero_intensity_is_silent(self):
        m = make_model(sigma_u=0.0, sigma_v=0.0, sigma_w=0.0)
        for _ in range(200):
            assert m.step() == (0.0, 0.0, 0.0)
        m2 = make_model(sigma_u=0.0, sigma_v=0.0, sigma_w=0.0)
        assert np.all(m2.generate(1000) == 0.0)

    def test_stationary_std_within_ten_percent(self):
        m = make_model(seed=101)
        series = m.generate(1_000_000)
        cfg = m.cfg
        for i, sigma in enumerate((cfg.sigma_u, cfg.sigma_v, cfg.sigma_w)):
            std = float(np.std(series[:, i]))
            assert abs(std - sigma) / sigma < 0.10, (i, std, sigma)

    def test_cap_never_exceeded(self):
        m = make_model(seed=7, sigma_u=4.0, sigma_v=4.0, sigma_w=4.0)
        series = m.generate(1_000_000)
        assert np.max(np.abs(series)) <= m.cfg.cap
        m2 = make_model(seed=7, sigma_u=4.0, sigma_v=4.0, sigma_w=4.0)
        for _ in range(5000):
            assert all(abs(v) <= m2.cfg.cap for v in m2.step())

    def test_seeded_determinism(self):
        a = [make_model(seed=3).step() for _ in range(100)]
        b = [make_model(seed=3).step() for _ in range(100)]
        assert a == b

    def test_config_validation(self):
        with pytest.raises(ConfigurationError):
            DrydenConfig(V=0.0)
        with pytest.raises(ConfigurationError):
            DrydenConfig(sigma_u=-1.0)


class TestOneMinusCos:
    CFG = OneMinusCosConfig(amplitude=3.0, duration=1.0, start=5.0)

    def test_zero_before_and_after(self):
        assert one_minus_cos(4.99, self.CFG) == 0.0
        assert one_minus_cos(7.01, self.CFG) == 0.0

    def test_peak_is_amplitude_exactly(self):
        assert abs(one_minus_cos(6.0, self.CFG) - 3.0) < 1e-12

    def test_half_way_values(self):
        assert one_minus_cos(5.5, self.CFG) == pytest.approx(1.5)
        assert one_minus_cos(6.5, self.CFG) == pytest.approx(1.5)

    def test_endpoints_are_zero(self):
        assert one_minus_cos(5.0, self.CFG) == pytest.approx(0.0, abs=1e-12)
        assert one_minus_cos(7.0, self.CFG) == pytest.approx(0.0, abs=1e-12)

    def test_pulse_integral_closed_form(self):
        # integral of (Vm/2)(1 - cos(pi (t-t0)/dm)) over [t0, t0+2dm] = Vm*dm
        val, _ = integrate.quad(lambda t: one_minus_cos(t, self.CFG), 5.0, 7.0)
        assert abs(val - 3.0 * 1.0) < 1e-9

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            OneMinusCosConfig(amplitude=-1.0)
        with pytest.raises(ConfigurationError):
            OneMinusCosConfig(duration=0.0)
        with pytest.raises(ConfigurationError):
            OneMinusCosConfig(axis=3)


class TestWindCoupling:
    PARAMS = QuadParams(Cdx=0.01, Cdy=0.02, Cdz=0.03)

    def test_zero_wind(self):
        force, torque = wind_to_disturbance((0.0, 0.0, 0.0), self.PARAMS)
        assert force == (0.0, 0.0, 0.0)
        assert torque == (0.0, 0.0, 0.0)

    def test_quadratic_force_law(self):
        f1, _ = wind_to_disturbance((2.0, -1.0, 3.0), self.PARAMS)
        f2, _ = wind_to_disturbance((4.0, -2.0, 6.0), self.PARAMS)
        assert f2 == pytest.approx(tuple(4.0 * f for f in f1))

    def test_hand_formula(self):
        kappa = 0.002
        force, torque = wind_to_disturbance((2.0, -3.0, 1.0), self.PARAMS, kappa)
        assert force == pytest.approx((0.01 * 4.0, -0.02 * 9.0, 0.03 * 1.0))
        assert torque == pytest.approx((kappa * -3.0, -kappa * 2.0, 0.0))


class TestParamBias:
    def test_identity(self):
        p = QuadParams()
        assert apply_bias(p, ParamBias(1.0, 1.0, 1.0, 1.0)) == p

    def test_fifteen_percent(self):
        p = apply_bias(QuadParams(), ParamBias(1.15, 1.15, 1.15, 1.15))
        assert p.m == pytest.approx(0.7475)
        assert p.Ix == pytest.approx(8.625e-3)
        assert p.Iz == pytest.approx(1.3e-2 * 1.15)

    def test_nominal_untouched(self):
        nominal = QuadParams()
        apply_bias(nominal, ParamBias(1.15, 1.15, 1.15, 1.15))
        assert nominal.m == 0.65 and nominal.Ix == 7.5e-3

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            ParamBias(m=0.0)
