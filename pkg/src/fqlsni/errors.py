"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ConfigurationError(ValueError):
    """A parameter set or scenario configuration is inconsistent."""


class SingularityError(RuntimeError):
    """The feedback-linearization altitude channel is undefined (cos(roll)*cos(pitch) ~ 0)."""


class SimulationDiverged(RuntimeError):
    """The simulated vehicle left the attitude envelope where the control law is valid."""

    def __init__(self, message, t=None):
        super().__init__(message)
        self.t = t
