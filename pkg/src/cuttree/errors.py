"""Exception hierarchy shared by every module."""


class CutTreeError(Exception):
    pass


class InputError(CutTreeError, ValueError):
    """Malformed input: bad file, mismatched cut length, u == v, ..."""


class EnumerationCapError(InputError):
    """Exhaustive enumeration requested above the configured cap."""


class PreconditionError(CutTreeError):
    """An operation was called outside its stated precondition."""


class PropertyViolation(CutTreeError):
    """A set-function oracle broke a property the computation relies on."""


class ConsistencyError(CutTreeError):
    """An internal optimality or laminarity assertion failed."""
