"""Semantic exception hierarchy for the abeta package."""


class AbetaError(Exception):
    """Base error for this package."""


class DomainError(AbetaError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class LengthError(AbetaError, LookupError):
    """A coefficient functional needs indices the sequence does not hold."""


class ConstraintInfeasibleError(AbetaError, RuntimeError):
    """The constrained sampler could not satisfy its target after retries."""


class NoRootError(AbetaError, ArithmeticError):
    """A bracketing root search found no sign change."""


class LimitError(AbetaError, ValueError):
    """A structural cap (e.g. partial-sum order) was exceeded."""
