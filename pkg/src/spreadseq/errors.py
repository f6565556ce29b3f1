"""Exception types raised across the package."""


class SpreadSeqError(Exception):
    """Base class for all package errors."""


class ShapeError(SpreadSeqError, ValueError):
    """Inconsistent lengths, dimensions or moduli."""


class ConditionViolation(SpreadSeqError, ValueError):
    """A construction precondition does not hold."""


class InsufficientFamilyError(SpreadSeqError, ValueError):
    """A matrix family is too small for the requested statistic."""


class CapacityError(SpreadSeqError, MemoryError):
    """Materialization would exceed the configured memory budget."""


class ParseError(SpreadSeqError, ValueError):
    """An exported matrix file could not be read."""
