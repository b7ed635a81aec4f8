"""Dynamic-inversion feedback linearization of the attitude/altitude channels.

Maps the virtual accelerations v = (v_z, v_roll, v_pitch, v_yaw) into the
thrust/moment vector so that, with matched parameters and zero drag, the
closed plant behaves as four decoupled double integrators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SingularityError
from .plant import ControlMoments, QuadParams, QuadState

# below this |cos(roll)*cos(pitch)| the thrust inversion is rejected
EPS_SING = 1e-3


@dataclass(frozen=True)
class VirtualInput:
    """Commanded accelerations: v1 altitude [m/s^2], v2..v4 roll/pitch/yaw [rad/s^2]."""

    v1: float = 0.0
    v2: float = 0.0
    v3: float = 0.0
    v4: float = 0.0


@dataclass(frozen=True)
class FlCoefficients:
    """Inertia ratios entering the inversion law, derived from nominal params."""

    k1: float
    k2: float
    k3: float
    k4: float
    k5: float
    h1: float
    h2: float
    h3: float

    @classmethod
    def from_params(cls, p: QuadParams) -> "FlCoefficients":
        return cls(
            k1=(p.Iz - p.Iy) / p.Ix,
            k2=p.Jr / p.Ix,
            k3=(p.Ix - p.Iz) / p.Iy,
            k4=p.Jr / p.Iy,
            k5=(p.Iy - p.Ix) / p.Iz,
            h1=1.0 / p.Ix,
            h2=1.0 / p.Iy,
            h3=1.0 / p.Iz,
        )


def linearize(v: VirtualInput, state: QuadState, nominal: QuadParams,
              coeffs: FlCoefficients | None = None) -> ControlMoments:
    """Invert the nominal rigid-body model: U such that the accelerations equal v.

    Raises SingularityError when the vehicle is close to +/-90 deg roll/pitch,
    where the thrust channel cannot produce the commanded vertical acceleration.
    """
    c = coeffs if coeffs is not None else FlCoefficients.from_params(nominal)
    cacg = math.cos(state.roll) * math.cos(state.pitch)
    if abs(cacg) < EPS_SING:
        raise SingularityError(
            f"|cos(roll)*cos(pitch)| = {abs(cacg):.3e} < {EPS_SING}")

    p, q, r = state.roll_rate, state.pitch_rate, state.yaw_rate
    omega_r = state.OmegaR
    return ControlMoments(
        U1=nominal.m / cacg * (nominal.g + v.v1),
        U2=(c.k1 * q * r + c.k2 * omega_r * q + v.v2) / c.h1,
        U3=(c.k3 * p * r - c.k4 * omega_r * p + v.v3) / c.h2,
        U4=(c.k5 * p * q + v.v4) / c.h3,
    )


def linearized_plant_dc_gain(eps: float) -> np.ndarray:
    """4x4 DC gain surrogate diag(1/eps) of the double-integrator plant.

    The double integrator has infinite DC gain; the stability checker probes
    the interconnection condition in the limit eps -> 0.
    """
    if not eps > 0.0:
        raise DomainError("eps must be positive")
    return np.diag([1.0 / eps] * 4)
