"""Exogenous disturbance generators: Dryden-style gusts, 1-cos pulses, parameter bias.

The continuous gust process is realized by shaping filters driven by white
noise: a first-order (Ornstein-Uhlenbeck) filter on the longitudinal axis and
second-order lead-lag filters on the lateral/vertical axes.  Filters are
discretized exactly (matrix exponential + Van Loan noise covariance) and
scaled so the stationary output standard deviation equals the configured
intensity; outputs are hard-clipped to the configured cap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import linalg, signal

from .errors import ConfigurationError, DomainError
from .plant import QuadParams


@dataclass(frozen=True)
class DrydenConfig:
    """Turbulence scales/intensities per axis plus the hard output cap."""

    V: float = 5.0                   # airspeed surrogate [m/s]
    Lu: float = 200.0                # length scales [m]
    Lv: float = 200.0
    Lw: float = 50.0
    sigma_u: float = 1.5             # intensities [m/s]
    sigma_v: float = 1.5
    sigma_w: float = 1.0
    cap: float = 5.0                 # hard clip per axis [m/s]
    seed: int = 0

    def __post_init__(self):
        for name in ("V", "Lu", "Lv", "Lw", "cap"):
            if not getattr(self, name) > 0.0:
                raise ConfigurationError(f"DrydenConfig.{name} must be positive")
        for name in ("sigma_u", "sigma_v", "sigma_w"):
            if getattr(self, name) < 0.0:
                raise ConfigurationError(f"DrydenConfig.{name} must be non-negative")


@dataclass(frozen=True)
class OneMinusCosConfig:
    """Deterministic smooth gust pulse on one axis."""

    amplitude: float = 3.0           # peak velocity [m/s]
    duration: float = 1.0            # time to peak [s]; pulse lasts 2*duration
    start: float = 5.0               # onset time [s]
    axis: int = 0                    # 0=x, 1=y, 2=z

    def __post_init__(self):
        if self.amplitude < 0.0:
            raise ConfigurationError("gust amplitude must be non-negative")
        if not self.duration > 0.0:
            raise ConfigurationError("gust duration must be positive")
        if self.axis not in (0, 1, 2):
            raise ConfigurationError("gust axis must be 0, 1 or 2")


@dataclass(frozen=True)
class ParamBias:
    """Multiplicative plant-side factors on mass and inertias."""

    m: float = 1.15
    Ix: float = 1.15
    Iy: float = 1.15
    Iz: float = 1.15

    def __post_init__(self):
        for name in ("m", "Ix", "Iy", "Iz"):
            if not getattr(self, name) > 0.0:
                raise ConfigurationError(f"ParamBias.{name} must be positive")


def _second_order_filter(L: float, V: float, sigma: float, dt: float):
    """Exact discrete realization of the lateral/vertical shaping filter.

    Continuous form: output (1 + sqrt(3) L/V s) / (1 + L/V s)^2 driven by
    white noise, rescaled so the discrete stationary output std is sigma.
    Returns (Ad, Ln, C) with Ln the noise-injection square root.
    """
    b = V / L
    a_mat = np.array([[0.0, 1.0], [-b * b, -2.0 * b]])
    b_vec = np.array([[0.0], [1.0]])
    c_vec = np.array([[1.0, math.sqrt(3.0) / b]])

    # Van Loan: exact ZOH transition and process-noise covariance
    n = 2
    m_mat = np.zeros((2 * n, 2 * n))
    m_mat[:n, :n] = -a_mat
    m_mat[:n, n:] = b_vec @ b_vec.T
    m_mat[n:, n:] = a_mat.T
    em = linalg.expm(m_mat * dt)
    ad = em[n:, n:].T
    qd = ad @ em[:n, n:]
    qd = 0.5 * (qd + qd.T)

    # symmetric square root (qd is rank-deficient; Cholesky would fail)
    evals, evecs = np.linalg.eigh(qd)
    ln = evecs @ np.diag(np.sqrt(np.clip(evals, 0.0, None)))

    if sigma > 0.0:
        p_stat = linalg.solve_discrete_lyapunov(ad, qd)
        std0 = math.sqrt((c_vec @ p_stat @ c_vec.T).item())
        c_vec = c_vec * (sigma / std0)
    else:
        c_vec = c_vec * 0.0
    return ad, ln, c_vec


class DrydenModel:
    """Stationary colored-noise wind process, stepped at a fixed sample time."""

    def __init__(self, cfg: DrydenConfig, dt: float, rng: np.random.Generator):
        if not dt > 0.0:
            raise DomainError("dt must be positive")
        self.cfg = cfg
        self.dt = dt
        self.rng = rng

        # longitudinal axis: exact OU update with stationary std sigma_u
        a = math.exp(-cfg.V / cfg.Lu * dt)
        self._ou_a = a
        self._ou_s = cfg.sigma_u * math.sqrt(max(0.0, 1.0 - a * a))
        self._xu = 0.0

        self._v_filt = _second_order_filter(cfg.Lv, cfg.V, cfg.sigma_v, dt)
        self._w_filt = _second_order_filter(cfg.Lw, cfg.V, cfg.sigma_w, dt)
        self._xv = np.zeros(2)
        self._xw = np.zeros(2)

    def _clip(self, v: float) -> float:
        return min(max(v, -self.cfg.cap), self.cfg.cap)

    def step(self):
        """Advance one sample; returns the wind velocity 3-vector [m/s]."""
        self._xu = self._ou_a * self._xu + self._ou_s * self.rng.standard_normal()
        out = [self._clip(self._xu)]
        for x, (ad, ln, c) in ((self._xv, self._v_filt), (self._xw, self._w_filt)):
            x[:] = ad @ x + ln @ self.rng.standard_normal(2)
            out.append(self._clip((c @ x).item()))
        return tuple(out)

    def generate(self, n_steps: int) -> np.ndarray:
        """Vectorized realization of the same process, shape (n_steps, 3).

        Used for long statistical checks; draws its own noise sequence from
        the model's generator.
        """
        noise = self.rng.standard_normal((n_steps, 5))
        u = signal.lfilter([self._ou_s], [1.0, -self._ou_a], noise[:, 0])
        cols = [u]
        k = 1
        for ad, ln, c in (self._v_filt, self._w_filt):
            y = np.zeros(n_steps)
            for j in range(2):
                num, den = signal.ss2tf(ad, ln[:, j:j + 1], c, np.zeros((1, 1)))
                y += signal.lfilter(num[0], den, noise[:, k])
                k += 1
            cols.append(y)
        out = np.column_stack(cols)
        return np.clip(out, -self.cfg.cap, self.cfg.cap)


def one_minus_cos(t: float, cfg: OneMinusCosConfig) -> float:
    """Smooth gust velocity at time t: peaks at amplitude, zero outside the window."""
    if t < cfg.start or t > cfg.start + 2.0 * cfg.duration:
        return 0.0
    return 0.5 * cfg.amplitude * (1.0 - math.cos(math.pi * (t - cfg.start) / cfg.duration))


def wind_to_disturbance(wind, params: QuadParams, kappa: float = 0.002):
    """Map wind velocity to an external (force, torque) pair.

    Quadratic drag on the relative wind via the vehicle drag coefficients,
    plus a small configurable torque kappa * (wind x z-axis).
    """
    wx, wy, wz = wind
    force = (params.Cdx * wx * abs(wx),
             params.Cdy * wy * abs(wy),
             params.Cdz * wz * abs(wz))
    torque = (kappa * wy, -kappa * wx, 0.0)
    return force, torque


def apply_bias(params: QuadParams, bias: ParamBias) -> QuadParams:
    """Plant-side parameter set with the bias factors applied.

    Returns a new object; the nominal set used by the control law is never
    mutated.
    """
    return replace(params, m=params.m * bias.m, Ix=params.Ix * bias.Ix,
                   Iy=params.Iy * bias.Iy, Iz=params.Iz * bias.Iz)
