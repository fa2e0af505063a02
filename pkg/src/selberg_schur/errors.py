"""Exception hierarchy shared by the closed forms, the oracle and the CLI."""

from __future__ import annotations


class SelbergError(Exception):
    """Base class for every error raised by this package."""


class FormulaError(SelbergError, ValueError):
    """A closed form cannot be evaluated at the requested point.

    The CLI maps this family to exit code 2.
    """


class PoleError(FormulaError):
    """A gamma function argument hit a nonpositive integer."""

    def __init__(self, message: str, argument: complex | None = None):
        super().__init__(message)
        self.argument = argument


class ZeroDenominatorError(FormulaError):
    """A denominator factor (Pochhammer, sine, linear) vanished."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class NonTerminatingError(FormulaError):
    """A hypergeometric series has no nonpositive-integer numerator parameter."""


class DegenerateParameterError(FormulaError):
    """The parameter point is outside the formula's domain (e.g. rho = 0)."""


class UnsupportedPartitionError(FormulaError):
    """No closed form in this package applies to the given partition."""


class OracleError(SelbergError):
    """Base class for failures of the numerical integration engine."""


class BudgetExceededError(OracleError):
    """The tensor grid would exceed the configured node budget."""


class ConvergenceError(OracleError):
    """The requested integral does not converge for these parameters."""
