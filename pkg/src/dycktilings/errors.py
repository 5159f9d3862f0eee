"""Exceptions shared across the package."""


class DomainError(ValueError):
    """Input is outside the domain of the requested operation."""


class DivisibilityError(ArithmeticError):
    """An exact polynomial division left a nonzero remainder.

    Every quotient taken in this package is exact by theorem, so this
    exception firing means a formula or an input was wrong.  It is never
    caught and papered over.
    """


class CapacityError(RuntimeError):
    """Requested size exceeds the configured enumeration bound."""
