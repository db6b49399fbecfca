"""Exception types raised by the library."""


class DGHError(Exception):
    """Base class for all library errors."""


class BurgersCaseExcluded(DGHError, ValueError):
    """alpha = gamma = 0 reduces to the inviscid Burgers equation, which is not handled."""


class PoleEvaluation(DGHError, ZeroDivisionError):
    """The potential was evaluated at its non-removable pole."""


class NoPole(DGHError, ValueError):
    """A pole-dependent quantity was requested with alpha = 0."""


class InvalidInterval(DGHError, ValueError):
    """The potential is not positive on the requested interval."""


class WrongClass(DGHError, ValueError):
    """An operation was applied to a wave class it does not support."""


class IncompatibleSegments(DGHError, ValueError):
    """Composite segments cannot be joined."""


class StumponConstantViolated(DGHError, ValueError):
    """Plateaus were requested but A differs from the stumpon constant."""


class CFLViolation(DGHError, ValueError):
    """The time step exceeds the stability guard."""


class Blowup(DGHError, FloatingPointError):
    """Non-finite values appeared during time stepping."""

    def __init__(self, t, message=None):
        self.t = t
        super().__init__(message or f"non-finite solution at t={t!r}")
