"""Exception types shared across the package."""


class OpcalcError(Exception):
    """Base class for all package errors."""


class DomainError(OpcalcError):
    """Point or parameter outside the open domain of a function."""


class NoLimit(OpcalcError):
    """Sectorial limit probes disagree beyond tolerance."""


class Unsupported(OpcalcError):
    """Operation not available for this closed-form class."""


class Overflow(OpcalcError):
    """Symbolic degree cap exceeded."""


class Singular(OpcalcError):
    """Requested resolvent point is an eigenvalue."""


class NotDiagonalizable(OpcalcError):
    """Operation requires a (numerically) diagonalizable matrix."""


class BranchViolation(OpcalcError):
    """An eigenvalue sits on (or within tolerance of) a branch point."""


class PreconditionFailed(OpcalcError):
    """A documented precondition of an operation does not hold."""


class UnknownExperiment(OpcalcError):
    """Experiment name not in the registry."""
