"""Semantic exception hierarchy.

Public functions never raise bare ValueError; everything a caller can
provoke maps onto one of these types so the CLI can translate failures
into stable exit codes.
"""


class BayesFlipError(Exception):
    """Base class for all package errors."""


class DomainError(BayesFlipError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class NoSignChange(BayesFlipError):
    """Root bracket endpoints do not straddle a sign change."""


class MaxIterExceeded(BayesFlipError):
    """Iterative solver hit its iteration budget before converging."""


class ConvergenceError(BayesFlipError):
    """Quadrature error estimate could not reach the requested tolerance."""


class NoFlipPoint(BayesFlipError):
    """No evidence-reversal point exists for the given inputs (|z| <= 1,
    or no sign change of the log Bayes factor over the search range)."""


class NotAReversal(BayesFlipError):
    """A candidate scale pair fails the reversal-pair invariants."""
