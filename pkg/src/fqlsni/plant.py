"""Nonlinear 6-DOF quadrotor rigid-body dynamics, rotor mixing and RK4 stepping.

The translational/rotational equations of motion follow the standard
Euler-angle quadrotor model with quadratic translational drag and linear
rotational drag.  Controllers command the thrust/moment vector U; the four
rotor speeds are recovered by inverting the linear mixer so the gyroscopic
propeller term stays consistent between plant and control law.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigurationError, DomainError, SimulationDiverged

# attitude envelope: below this |cos(roll)*cos(pitch)| the thrust channel
# of the inversion-based control law is no longer meaningful
ATTITUDE_GUARD = 1e-3


@dataclass(frozen=True)
class QuadParams:
    """Physical constants of the vehicle."""

    m: float = 0.65          # mass [kg]
    Ix: float = 7.5e-3       # roll inertia [kg m^2]
    Iy: float = 7.5e-3       # pitch inertia [kg m^2]
    Iz: float = 1.3e-2       # yaw inertia [kg m^2]
    Jr: float = 6e-5         # propeller inertia [kg m^2]
    Km: float = 7.5e-7       # rotor torque coefficient [N m s^2]
    Kf: float = 3.13e-5      # rotor thrust coefficient [N s^2]
    L: float = 0.23          # arm length [m]
    g: float = 9.81          # gravitational acceleration [m/s^2]
    Cdx: float = 0.0         # translational drag coefficients
    Cdy: float = 0.0
    Cdz: float = 0.0
    Cax: float = 0.0         # rotational drag coefficients
    Cay: float = 0.0
    Caz: float = 0.0

    def __post_init__(self):
        for name in ("m", "Ix", "Iy", "Iz", "Jr", "Km", "Kf", "L", "g"):
            if not getattr(self, name) > 0.0:
                raise ConfigurationError(f"QuadParams.{name} must be strictly positive")
        for name in ("Cdx", "Cdy", "Cdz", "Cax", "Cay", "Caz"):
            if getattr(self, name) < 0.0:
                raise ConfigurationError(f"QuadParams.{name} must be non-negative")

    def hover_thrust(self) -> float:
        return self.m * self.g


@dataclass(frozen=True)
class QuadState:
    """Rigid-body state plus the aggregate propeller speed OmegaR."""

    x: float = 0.0
    y: float = 0.0
    z: float = 0.0
    roll: float = 0.0
    pitch: float = 0.0
    yaw: float = 0.0
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    roll_rate: float = 0.0
    pitch_rate: float = 0.0
    yaw_rate: float = 0.0
    OmegaR: float = 0.0

    def as_vector(self):
        return (self.x, self.y, self.z, self.roll, self.pitch, self.yaw,
                self.vx, self.vy, self.vz,
                self.roll_rate, self.pitch_rate, self.yaw_rate)


@dataclass(frozen=True)
class ControlMoments:
    """Total thrust U1 [N] and roll/pitch/yaw moments U2..U4 [N m]."""

    U1: float = 0.0
    U2: float = 0.0
    U3: float = 0.0
    U4: float = 0.0

    def as_tuple(self):
        return (self.U1, self.U2, self.U3, self.U4)


_ZERO3 = (0.0, 0.0, 0.0)


def _check_finite(values, what):
    for v in values:
        if not math.isfinite(v):
            raise DomainError(f"non-finite value in {what}")


def derivatives(state: QuadState, u: ControlMoments, params: QuadParams,
                ext_force=_ZERO3, ext_torque=_ZERO3):
    """Time derivative of the 12-dimensional rigid-body state.

    ext_force [N] and ext_torque [N m] are additive exogenous inputs
    (wind coupling); they enter as force/mass and torque/inertia.
    Returns a 12-tuple ordered like QuadState.as_vector().
    """
    _check_finite(state.as_vector() + (state.OmegaR,), "state")
    _check_finite(u.as_tuple(), "control input")
    _check_finite(tuple(ext_force) + tuple(ext_torque), "disturbance")

    sa, ca = math.sin(state.roll), math.cos(state.roll)
    st, ct = math.sin(state.pitch), math.cos(state.pitch)
    sp, cp = math.sin(state.yaw), math.cos(state.yaw)
    p, q, r = state.roll_rate, state.pitch_rate, state.yaw_rate

    ax = ((cp * st * ca + sp * sa) * u.U1 - params.Cdx * state.vx ** 2) / params.m \
        + ext_force[0] / params.m
    ay = ((sp * sa * ca - cp * sa) * u.U1 - params.Cdy * state.vy ** 2) / params.m \
        + ext_force[1] / params.m
    az = ((ca * ct) * u.U1 - params.Cdz * state.vz ** 2) / params.m - params.g \
        + ext_force[2] / params.m

    aroll = (u.U2 - params.Cax * p - params.Jr * state.OmegaR * q
             - (params.Iz - params.Iy) * q * r) / params.Ix + ext_torque[0] / params.Ix
    apitch = (u.U3 - params.Cay * q + params.Jr * state.OmegaR * p
              - (params.Ix - params.Iz) * p * r) / params.Iy + ext_torque[1] / params.Iy
    ayaw = (u.U4 - params.Caz * r - (params.Iy - params.Ix) * p * q) / params.Iz \
        + ext_torque[2] / params.Iz

    return (state.vx, state.vy, state.vz, p, q, r, ax, ay, az, aroll, apitch, ayaw)


def mixer_inverse(u: ControlMoments, params: QuadParams):
    """Recover the four squared rotor speeds and OmegaR from the moment vector.

    Negative squared speeds (infeasible commands) are clamped to zero before
    the square root, so the returned OmegaR always corresponds to realizable
    rotor speeds.  Returns ((w1sq, w2sq, w3sq, w4sq), OmegaR).
    """
    _check_finite(u.as_tuple(), "control input")
    a = params.L * params.Kf
    b = params.Km
    if a == 0.0 or b == 0.0:
        raise ConfigurationError("mixer is singular: L*Kf and Km must be nonzero")

    total = u.U1 / a                      # w1^2 + w2^2 + w3^2 + w4^2
    alt = u.U4 / b                        # w1^2 - w2^2 + w3^2 - w4^2
    odd = 0.5 * (total + alt)             # w1^2 + w3^2
    even = 0.5 * (total - alt)            # w2^2 + w4^2
    w1sq = 0.5 * (odd - u.U3 / a)
    w3sq = 0.5 * (odd + u.U3 / a)
    w2sq = 0.5 * (even + u.U2 / a)
    w4sq = 0.5 * (even - u.U2 / a)

    sq = tuple(max(0.0, w) for w in (w1sq, w2sq, w3sq, w4sq))
    w1, w2, w3, w4 = (math.sqrt(w) for w in sq)
    omega_r = w1 - w2 + w3 - w4
    return sq, omega_r


def mixer_forward(rotor_sq, params: QuadParams) -> ControlMoments:
    """Map squared rotor speeds back to (U1..U4); inverse of mixer_inverse."""
    w1sq, w2sq, w3sq, w4sq = rotor_sq
    a = params.L * params.Kf
    return ControlMoments(
        U1=a * (w1sq + w2sq + w3sq + w4sq),
        U2=a * (w2sq - w4sq),
        U3=a * (w3sq - w1sq),
        U4=params.Km * (w1sq - w2sq + w3sq - w4sq),
    )


def saturate(u: ControlMoments, limits) -> ControlMoments:
    """Symmetric actuator saturation; U1 additionally floored at zero."""
    l1, l2, l3, l4 = limits
    return ControlMoments(
        U1=min(max(u.U1, 0.0), l1),
        U2=min(max(u.U2, -l2), l2),
        U3=min(max(u.U3, -l3), l3),
        U4=min(max(u.U4, -l4), l4),
    )


def step(state: QuadState, u: ControlMoments, params: QuadParams,
         ext_force=_ZERO3, ext_torque=_ZERO3, dt: float = 0.01,
         t: float | None = None) -> QuadState:
    """Classical RK4 advance over one sample period.

    OmegaR is recomputed from the applied input and held constant across the
    four stages; it is an input-derived quantity, not an integrated state.
    """
    if not dt > 0.0:
        raise DomainError("dt must be positive")

    _, omega_r = mixer_inverse(u, params)
    base = replace(state, OmegaR=omega_r)

    def f(vec):
        s = QuadState(*vec, OmegaR=omega_r)
        return derivatives(s, u, params, ext_force, ext_torque)

    y0 = base.as_vector()
    k1 = f(y0)
    k2 = f(tuple(y + 0.5 * dt * k for y, k in zip(y0, k1)))
    k3 = f(tuple(y + 0.5 * dt * k for y, k in zip(y0, k2)))
    k4 = f(tuple(y + dt * k for y, k in zip(y0, k3)))
    y1 = tuple(y + dt / 6.0 * (a + 2.0 * b + 2.0 * c + d)
               for y, a, b, c, d in zip(y0, k1, k2, k3, k4))

    new = QuadState(*y1, OmegaR=omega_r)
    if abs(math.cos(new.roll) * math.cos(new.pitch)) < ATTITUDE_GUARD:
        raise SimulationDiverged(
            "attitude left the valid envelope (|cos(roll)*cos(pitch)| < 1e-3)", t=t)
    return new
