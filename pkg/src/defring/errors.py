"""Exception hierarchy shared by all defring modules."""

from __future__ import annotations


class DefringError(Exception):
    """Base class for all errors raised by this package."""


class CapExceededError(DefringError):
    """A closure or enumeration grew past the configured element cap."""


class NotInvertibleError(DefringError):
    """A matrix that must be invertible is singular."""


class DimensionMismatchError(DefringError):
    """Operands have incompatible shapes or live over different fields."""


class UnsupportedFieldError(DefringError):
    """Requested field parameters fall outside the supported range."""


class InconclusiveError(DefringError):
    """A randomized test exhausted its budget without a certificate."""


class PreconditionError(DefringError):
    """An operation was called on input violating its stated hypotheses."""


class UnsupportedModuleError(DefringError):
    """No dual construction is registered for this module label."""


class InconsistentLambdaError(DefringError):
    """Two different coefficient values were supplied for the same word."""


class SizeExceededError(DefringError):
    """Requested symbolic or enumerative computation is over the size cap."""


class InconsistentPartitionError(DefringError):
    """Block dimensions and twist classes do not describe a valid partition."""


class AssertionFailedError(DefringError):
    """A certified inequality failed; indicates an implementation bug."""


class InputValidationError(DefringError):
    """A report input file failed schema or consistency validation."""
