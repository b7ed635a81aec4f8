"""First-order SNI tracking controller and interconnection stability checks.

The controller transfer function is gamma/(tau*s + 1) - beta: a first-order
lag with a negative feed-through that makes the DC gain gamma - beta negative,
which is what the double-integrator interconnection needs for stability.
Gains change online, so the discrete stepping recomputes the zero-order-hold
pole from the current time constant at every sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError

TAU_MIN = 1e-3

# clamping box for online gain adaptation; negative tau would break both
# the SNI property and the realization
GAMMA_BOUNDS = (0.1, 100.0)
TAU_BOUNDS = (TAU_MIN, 1.0)


@dataclass(frozen=True)
class SniGains:
    """Per-channel controller gains: DC path gain, time constant, feed-forward."""

    gamma: float
    tau: float
    beta: float

    def __post_init__(self):
        if not self.gamma > 0.0:
            raise ConfigurationError("SniGains.gamma must be positive")
        if not self.tau >= TAU_MIN:
            raise ConfigurationError(f"SniGains.tau must be >= {TAU_MIN}")

    @classmethod
    def managed(cls, gamma: float, tau: float) -> "SniGains":
        """Gains under the adaptive rule beta = gamma + 1."""
        return cls(gamma=gamma, tau=tau, beta=gamma + 1.0)


@dataclass
class SniState:
    """Internal state of the first-order filter (one scalar per channel)."""

    xf: float = 0.0


def sni_step(st: SniState, e: float, gains: SniGains, dt: float):
    """Advance the controller one sample; returns (new state, output u).

    Exact zero-order-hold discretization: the filter pole exp(-dt/tau) is
    recomputed from the current gains so online tau changes take effect
    immediately.
    """
    if not dt > 0.0:
        raise DomainError("dt must be positive")
    a = math.exp(-dt / gains.tau)
    xf = a * st.xf + (1.0 - a) * e
    u = gains.gamma * xf - gains.beta * e
    return SniState(xf=xf), u


def sni_frequency_condition(gains: SniGains, omega_grid) -> bool:
    """Strict negative-imaginary test j(N(jw) - N(jw)*) > 0 on a frequency grid.

    Evaluated directly from the complex frequency response; the constant
    feed-through cancels in the difference and does not affect the result.
    """
    omega = np.asarray(omega_grid, dtype=float)
    if omega.size == 0:
        raise DomainError("frequency grid is empty")
    if np.any(omega <= 0.0):
        raise DomainError("frequencies must be strictly positive")
    n = gains.gamma / (1j * omega * gains.tau + 1.0) - gains.beta
    vals = (1j * (n - np.conj(n))).real
    return bool(np.all(vals > 0.0))


def default_frequency_grid(n: int = 200):
    """Log-spaced grid used by the SNI property sweep."""
    return np.logspace(-2, 4, n)


def dc_gain_stability(gamma: float, beta: float) -> bool:
    """True iff the controller DC gain gamma - beta is negative.

    Against the double-integrator plant (infinite DC gain) this is necessary
    and sufficient for the interconnection DC-gain condition to hold in the
    limit.
    """
    if not (math.isfinite(gamma) and math.isfinite(beta)):
        raise DomainError("gamma and beta must be finite")
    return gamma - beta < 0.0


def lemma1_check(p_dc, n_dc) -> bool:
    """Interconnection DC-gain condition: max real eigenvalue of P(0)N(0) < 1."""
    p = np.asarray(p_dc, dtype=float)
    n = np.asarray(n_dc, dtype=float)
    if p.ndim != 2 or p.shape[0] != p.shape[1]:
        raise DomainError("P(0) must be square")
    if p.shape != n.shape:
        raise DomainError("P(0) and N(0) dimensions must match")
    eigs = np.linalg.eigvals(p @ n)
    return bool(np.max(eigs.real) < 1.0)


def clamp_gamma(gamma: float) -> float:
    lo, hi = GAMMA_BOUNDS
    return min(max(gamma, lo), hi)


def clamp_tau(tau: float) -> float:
    lo, hi = TAU_BOUNDS
    return min(max(tau, lo), hi)
