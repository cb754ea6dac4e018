"""
Exception types raised by the solver modules.
Everything derives from DiracError so callers can catch the whole family at once.
"""


class DiracError(Exception):
    """Base class for every error raised by this package."""


class DomainError(DiracError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class PreconditionError(DiracError, ValueError):
    """A physics precondition does not hold (e.g. tunneling for a strictly bound mix)."""


class BracketError(DiracError, ValueError):
    """An energy bracket does not straddle the requested eigenvalue."""


class ConsistencyError(DiracError):
    """An energy handed to a closed-form solution is not one of its eigenvalues."""


class NotFoundError(DiracError, LookupError):
    """A search window contained no level."""


class ConfigError(DiracError, ValueError):
    """Invalid configuration key, value or command-line usage."""
