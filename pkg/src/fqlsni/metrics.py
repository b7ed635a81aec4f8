"""Tracking-performance metrics: RMSE, steady-state offset, settle time."""

from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

STEADY_WINDOW = 500          # samples entering the steady-offset metric
SETTLE_FRACTION = 0.02       # band: 2% of the reference span ...
SETTLE_FLOOR = 0.02          # ... with an absolute floor


def rmse(errors) -> float:
    """Root mean square of an error sequence."""
    e = np.asarray(errors, dtype=float)
    if e.size == 0:
        raise DomainError("empty error sequence")
    return float(np.sqrt(np.mean(e * e)))


def steady_offset(errors) -> float:
    """Maximum absolute error over the final STEADY_WINDOW samples."""
    e = np.asarray(errors, dtype=float)
    if e.size < STEADY_WINDOW + 1:
        raise DomainError(f"need at least {STEADY_WINDOW + 1} samples")
    return float(np.max(np.abs(e[-STEADY_WINDOW:])))


def settle_time(errors, band: float, dt: float):
    """First time from which |e| stays within the band through the end.

    Returns (t_s, settled).  A sequence that never settles reports the full
    duration with settled=False; one already inside the band reports 0.
    """
    if not band > 0.0:
        raise DomainError("band must be positive")
    e = np.abs(np.asarray(errors, dtype=float))
    if e.size == 0:
        raise DomainError("empty error sequence")
    outside = np.flatnonzero(e > band)
    if outside.size == 0:
        return 0.0, True
    first_inside = outside[-1] + 1
    if first_inside >= e.size:
        return e.size * dt, False
    return first_inside * dt, True


def settle_band(reference) -> float:
    """Band for settle_time: 2% of the reference span with an absolute floor."""
    r = np.asarray(reference, dtype=float)
    span = float(np.max(r) - np.min(r)) if r.size else 0.0
    return max(SETTLE_FLOOR, SETTLE_FRACTION * span)


def mean_abs(errors) -> float:
    e = np.asarray(errors, dtype=float)
    if e.size == 0:
        raise DomainError("empty error sequence")
    return float(np.mean(np.abs(e)))
