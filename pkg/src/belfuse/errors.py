"""Exception types.

Input problems derive from ``ValueError``; computations that are undefined
for valid inputs (total conflict, pignistic transform of m(∅)=1) derive from
``ArithmeticError``. The CLI maps the two families to distinct exit codes.
"""


class BeliefError(Exception):
    """Base class for all package errors."""


class FrameMismatchError(BeliefError, ValueError):
    """Operands are defined on different frames of discernment."""


class InvalidMassError(BeliefError, ValueError):
    """A mass assignment violates normalization or positivity."""


class UndefinedOperationError(BeliefError, ArithmeticError):
    """The operation has no defined result for these inputs."""


class TotalConflictError(UndefinedOperationError):
    """Normalization by 1 - κ is impossible because κ = 1."""
