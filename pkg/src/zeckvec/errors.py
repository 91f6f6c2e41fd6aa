"""Exception hierarchy shared by all modules."""


class ZeckvecError(Exception):
    """Base class for all library errors."""


class InvalidRecurrenceError(ZeckvecError):
    """Coefficient vector violates the selected mode's constructor invariants."""


class NotSatisfyingError(ZeckvecError):
    """Operation requires a satisfying representation but got something else."""


class NotNearlySatisfyingError(ZeckvecError):
    """Operation requires a nearly satisfying representation."""


class NotEndCompleteError(ZeckvecError):
    """Operation requires an end-complete nearly satisfying representation."""


class CarryBlockedError(ZeckvecError):
    """Carry at this position would produce a negative coefficient."""


class BorrowBlockedError(ZeckvecError):
    """Borrow from a zero coefficient."""


class CapExceededError(ZeckvecError):
    """Enumeration would exceed the configured cap."""


class BridgeDomainError(ZeckvecError):
    """Scalar bridge evaluated outside its domain (index too small)."""


class OracleExhaustedError(ZeckvecError):
    """Brute-force search frontier exceeded the node cap before finishing."""


class NonTerminationError(ZeckvecError):
    """Normalization exhausted its step budget (possible only in relaxed mode)."""
