"""Exception types shared across the package."""


class PersymError(Exception):
    """Base class for all errors raised by this package."""


class InsufficientPrecision(PersymError):
    """A series operation needed a coefficient beyond the stored precision.

    Raised instead of silently truncating: every series knows exactly how
    many coefficients it carries, and reading past the end is a caller bug.
    """


class BudgetExceeded(PersymError):
    """An enumeration would visit more domain points than the configured budget."""


class IncompleteDomain(PersymError):
    """A coset integral was requested over a value map that misses representatives."""


class NonIntegerResult(PersymError):
    """A count formula produced a non-integer, signalling an inconsistent input table."""


class CaseMismatch(PersymError):
    """A printed case table disagreed with the recurrence that generates it."""
