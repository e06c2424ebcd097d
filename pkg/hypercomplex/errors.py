"""
errors.py - exception hierarchy shared by the library and the CLI.

main.py maps these onto exit codes: ValidationError -> 2, DomainError -> 3,
VerificationError -> 4.
"""
from __future__ import annotations


class ValidationError(ValueError):
    """Input rejected before any computation (shapes, ranges, config)."""


class OrderMismatchError(ValidationError):
    """Two jets of different order were combined."""


class DegeneratePivotError(ValidationError):
    """k_0^2 + m_0^2 vanishes, so g_0 = 0 and every linear solve is singular."""


class UnsupportedFunctionError(ValidationError):
    """The symbolic route was asked to expand a non-polynomial F."""


class DomainError(ValueError):
    """An evaluation point lies outside the holomorphy domain of F."""


class ConvergenceError(DomainError):
    """A power series did not converge within the term cap."""


class VerificationError(ArithmeticError):
    """Two independent computations of the same quantity disagree."""
