"""Zero-order Sugeno fuzzy inference over a single clipped input.

Gaussian antecedents over the error universe [-2, 2], singleton consequents,
weighted-average defuzzification.  Gaussians never vanish, so the firing
vector always has positive mass and the defuzzified output is a convex
combination of the consequents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ConfigurationError, DomainError

INPUT_RANGE = (-2.0, 2.0)

# five labels, evenly centered; width chosen so adjacent functions cross
# near 0.5 membership
DEFAULT_LABELS = ("NB", "NS", "Z", "PS", "PB")
DEFAULT_CENTERS = (-2.0, -1.0, 0.0, 1.0, 2.0)
DEFAULT_WIDTH = 0.425


@dataclass(frozen=True)
class GaussianMf:
    """Gaussian membership function with center c and width s > 0."""

    c: float
    s: float

    def __post_init__(self):
        if not self.s > 0.0:
            raise ConfigurationError("GaussianMf width must be positive")

    def __call__(self, x: float) -> float:
        d = x - self.c
        return math.exp(-d * d / (2.0 * self.s * self.s))


@dataclass(frozen=True)
class RuleBase:
    """Immutable single-input rule base: one Gaussian antecedent per rule."""

    mfs: tuple = field(default_factory=tuple)
    labels: tuple = DEFAULT_LABELS

    def __post_init__(self):
        if len(self.mfs) == 0:
            raise ConfigurationError("rule base needs at least one rule")
        centers = [mf.c for mf in self.mfs]
        if any(b <= a for a, b in zip(centers, centers[1:])):
            raise ConfigurationError("membership centers must be strictly increasing")

    @classmethod
    def default(cls) -> "RuleBase":
        mfs = tuple(GaussianMf(c, DEFAULT_WIDTH) for c in DEFAULT_CENTERS)
        return cls(mfs=mfs)

    def __len__(self):
        return len(self.mfs)

    def fire(self, zeta: float):
        """Firing strengths of all rules at the clipped input."""
        z = clip_input(zeta)
        return tuple(mf(z) for mf in self.mfs)


def clip_input(zeta: float) -> float:
    lo, hi = INPUT_RANGE
    return min(max(zeta, lo), hi)


def defuzzify(w, phi) -> float:
    """Firing-strength-weighted average of the singleton consequents."""
    if len(w) != len(phi):
        raise DomainError("firing strengths and consequents must have equal length")
    total = math.fsum(w)
    if total <= 0.0:
        raise DomainError("degenerate input: zero total firing strength")
    return math.fsum(wi * pi for wi, pi in zip(w, phi)) / total
