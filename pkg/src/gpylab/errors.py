"""Exception types shared by every gpylab module.

Domain errors are caller mistakes (bad arguments); capacity errors mean the
request is well-formed but exceeds what this implementation will attempt
(memory, enumeration budget, exact-arithmetic overflow guards).
"""


class GpyError(Exception):
    pass


class DomainError(GpyError, ValueError):
    """Argument outside the operation's mathematical domain."""


class CapacityError(GpyError, RuntimeError):
    """Request exceeds a documented resource or enumeration budget."""
