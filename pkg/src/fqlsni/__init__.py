"""Quadrotor attitude/altitude simulator with fuzzy Q-learning adapted SNI control."""

from .config import ReferenceProfile, ScenarioConfig, load_config
from .controllers import (FixedSniController, FuzzyQlSniController,
                          FuzzySniController, PidController, PidGains)
from .fql import AgentOutputs, FqlAgent, FqlHyperParams, RuleQTable
from .harness import RunMetrics, run_scenario, sweep
from .ni_core import SniGains, SniState
from .plant import ControlMoments, QuadParams, QuadState

__all__ = [
    "AgentOutputs", "ControlMoments", "FixedSniController", "FqlAgent",
    "FqlHyperParams", "FuzzyQlSniController", "FuzzySniController",
    "PidController", "PidGains", "QuadParams", "QuadState",
    "ReferenceProfile", "RuleQTable", "RunMetrics", "ScenarioConfig",
    "SniGains", "SniState", "load_config", "run_scenario", "sweep",
]

__version__ = "0.1.0"
