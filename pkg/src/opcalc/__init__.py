"""opcalc: bounded functional calculi for matrix operators, numerically.

The package evaluates the Hille-Phillips, Besov (B), D_s and H_psi
functional calculi on dense complex matrices through their resolvent
integral representations, computes the underlying function-space norms by
certified adaptive quadrature, and ships an experiment runner that checks
the associated identities, bounds and asymptotics at desk scale.
"""

from .errors import (
    BranchViolation,
    DomainError,
    NoLimit,
    NotDiagonalizable,
    OpcalcError,
    Overflow,
    PreconditionFailed,
    Singular,
    UnknownExperiment,
    Unsupported,
)
from .quad import Bracket, QuadConfig

__all__ = [
    "Bracket",
    "QuadConfig",
    "OpcalcError",
    "DomainError",
    "NoLimit",
    "Unsupported",
    "Overflow",
    "Singular",
    "NotDiagonalizable",
    "BranchViolation",
    "PreconditionFailed",
    "UnknownExperiment",
]

__version__ = "0.1.0"
