"""Exception hierarchy.

Two broad families matter for the CLI exit-code contract:

* subclasses of :class:`InputError` indicate bad or out-of-contract input
  (mapped to exit code 2 by the CLI);
* :class:`InternalVerificationFailed` indicates that a mandatory exact
  self-check failed, i.e. a bug in this library (mapped to exit code 1).
"""


class CharkitError(Exception):
    """Base class for all library errors."""


class InputError(CharkitError):
    """Bad input: schema violations, precondition violations, caps."""


class InvalidPermutation(InputError):
    """Image list is not a bijection of {1..degree}."""


class OrderCapExceeded(InputError):
    """Group order exceeds a configured enumeration cap."""


class SchemaError(InputError):
    """Malformed JSON payload."""


class GroupMismatch(InputError):
    """Operands belong to different groups (or incompatible class structures)."""


class NotSubgroup(InputError):
    """Claimed subgroup is not contained in the ambient group."""


class NotNormal(InputError):
    """Subgroup is not normal in the ambient group."""


class NotSolvable(InputError):
    """Operation requires a solvable group."""


class NotLinear(InputError):
    """Operation requires a one-dimensional character."""


class IndexNotPrime(InputError):
    """Operation requires a normal subgroup of prime index."""


class OrderMismatch(InputError):
    """Cyclotomic operands with incompatible explicit orders."""


class DivisionByZero(InputError):
    """Division by the zero cyclotomic value."""


class NotPartition(InputError):
    """Claimed partition has overlapping or missing parts."""


class NotCompatible(InputError):
    """Supercharacter theories fail the superclass-compatibility condition."""


class NonIntegralRestriction(InputError):
    """A supercharacter restriction is not an integral combination downstairs."""


class NotGInvariant(InputError):
    """Inner supercharacter theory is not invariant under ambient conjugation."""


class NotTrivialOnIntersection(InputError):
    """Linear character is nontrivial on the relevant intersection subgroup."""


class PreconditionUnverified(InputError):
    """A stated precondition does not hold, so the conclusion is not asserted."""


class SearchSpaceTooLarge(InputError):
    """Requested exhaustive search exceeds the configured guard."""


class EmptyFamily(InputError):
    """Cone membership asked against an empty generating family."""


class VerificationFailed(CharkitError):
    """Externally supplied data failed re-verification."""


class InternalVerificationFailed(CharkitError):
    """A mandatory internal exact self-check failed: indicates a library bug."""
