"""
Errors
Exception hierarchy shared by services and commands
"""


class GaussSumError(Exception):
    """Base class for every error raised by this package"""


class DomainError(GaussSumError, ValueError):
    """Mathematically invalid input"""


class BoundExceededError(DomainError):
    """Input exceeds a desk-scale bound"""


class ReconstructionError(GaussSumError):
    """Discrete-log reconstruction could not narrow to a verified answer"""


class EstimatorError(GaussSumError):
    """A simulated quantum subroutine did not meet its exactness contract"""


class ConfigError(GaussSumError):
    """Configuration file missing, malformed or invalid"""


class UsageError(GaussSumError):
    """Flags that parse but do not combine into a valid run"""


__all__ = [
    'GaussSumError',
    'DomainError',
    'BoundExceededError',
    'ReconstructionError',
    'EstimatorError',
    'ConfigError',
    'UsageError'
]
