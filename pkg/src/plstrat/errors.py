"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: bad or ill-formed input is 1,
genericity and degeneracy failures are 2, internal invariant breaches are 3.
"""
from __future__ import annotations


class PLStratError(Exception):
    """Base class for all package errors."""


class InputError(PLStratError):
    """Unparseable or ill-formed input data."""


class StructuralError(PLStratError):
    """A structural precondition is violated (face closure, purity,
    disjointness, poset axioms, carrier mismatch and the like)."""


class NotAMemberError(StructuralError):
    """A simplex or cell was expected in a complex/carrier but is absent."""


class EmptyComplexError(StructuralError):
    """An operation that needs a nonempty complex received an empty one."""


class GenericityError(PLStratError):
    """The input is not in general position (ties, degenerate images,
    non-transverse crossings).  Never silently perturbed."""


class DegeneracyError(GenericityError):
    """A sampling or matching step could not be resolved unambiguously."""


class InternalError(PLStratError):
    """An internal invariant failed; indicates a bug, not bad input."""
