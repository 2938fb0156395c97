"""Exception hierarchy shared by all modules."""


class ToricEmbedError(Exception):
    """Base class for errors raised by this package."""


class RegionError(ToricEmbedError, ValueError):
    """Malformed region description or point (dimension mismatch, bad parameters)."""


class GaugeError(ToricEmbedError, RuntimeError):
    """Ray bisection failed; carries the offending directions and bracket."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class CapacityDomainError(ToricEmbedError, ValueError):
    """Region is neither a validated convex nor a validated concave domain."""


class DomainError(ToricEmbedError, ValueError):
    """Argument outside the domain of a billiard function."""


class QuadratureError(ToricEmbedError, RuntimeError):
    def __init__(self, message, levels=None):
        super().__init__(message)
        self.levels = levels or []


class BracketError(ToricEmbedError, RuntimeError):
    """Upper bracket expansion for the action inverse exceeded its bound."""
