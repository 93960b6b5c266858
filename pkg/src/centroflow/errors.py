"""Exception hierarchy for geometric and flow failures."""


class CentroflowError(Exception):
    """Base class for all package errors."""


class NotStarShaped(CentroflowError):
    """[C, C_p] changes sign on the grid: the origin does not see the whole curve."""


class DegenerateMetric(CentroflowError):
    """The metric radicand or a curvature denominator is zero or negative."""


class NonConstantSign(CentroflowError):
    """The orientation sign field varies over the grid."""


class FlowError(CentroflowError):
    """Base class for time-stepping failures; carries the failure time when known."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class StabilityViolation(FlowError):
    """Requested dt exceeds the explicit diffusion stability bound."""


class BlowUp(FlowError):
    """A field or coordinate exceeded its configured ceiling."""


class InsufficientStride(CentroflowError):
    """Too few trajectory records for the requested finite-difference check."""


class ConfigError(CentroflowError):
    """Scenario configuration is malformed; message names the offending field."""
