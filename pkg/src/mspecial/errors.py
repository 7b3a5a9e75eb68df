"""Exception types raised across the package."""


class MSpecialError(Exception):
    """Base class for all package errors."""


class DomainError(MSpecialError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class InvalidParameters(DomainError):
    """A parameter set violates its construction invariants."""


class DivergenceError(MSpecialError, ArithmeticError):
    """A series was requested outside its region of convergence."""


class ConvergenceError(MSpecialError, ArithmeticError):
    """An iterative evaluation exhausted its budget before converging."""


class IntegrandError(MSpecialError, ArithmeticError):
    """An integrand returned a non-finite value at a quadrature node."""
