"""Exception types shared across the simulator."""


class SimulationError(Exception):
    """Base class for errors raised by this package."""


class ConfigError(SimulationError):
    """Invalid scenario configuration; carries one message per offending field."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class NumericalError(SimulationError):
    """Runtime numerical failure (deep fade, singular channel, degenerate ratio)."""


class SingularChannelError(NumericalError):
    """A channel column carries no energy, so no precoder can be formed."""


class DeepFadeError(NumericalError):
    """An equalizer denominator is too close to zero to divide by."""
