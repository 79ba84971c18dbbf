"""
Exception types shared by the FusionLab packages
"""


class DomainError(ValueError):
    """Raised when a combinatorial input lies outside its domain"""


class SingularityError(ZeroDivisionError):
    """Raised when an evaluation hits a vanishing denominator"""


class ParameterError(ValueError):
    """Raised when process parameters produce invalid rates"""
