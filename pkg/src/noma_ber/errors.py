"""Exception types raised across the package."""


class NomaBerError(Exception):
    """Base class for all package errors."""


class DomainError(NomaBerError, ValueError):
    """An argument lies outside the domain of a function."""


class AllocationError(DomainError):
    """A power allocation violates the NU/FU ordering or constellation bounds."""


class DetectionError(NomaBerError, ArithmeticError):
    """Coherent detection is impossible (zero channel gain)."""


class NumericalError(NomaBerError, ArithmeticError):
    """A numerical routine failed to reach its requested tolerance."""

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ConfigError(NomaBerError, ValueError):
    """Invalid simulation or sweep configuration.

    ``violations`` holds every problem found, not just the first.
    """

    def __init__(self, violations):
        if isinstance(violations, str):
            violations = [violations]
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))
