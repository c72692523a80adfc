"""Exception hierarchy.

InputError subclasses map to CLI exit code 1, InternalError to exit code 2.
"""


class GGTError(Exception):
    pass


class InputError(GGTError):
    """Invalid user input (bad file, bad vertex, violated precondition)."""


class InternalError(GGTError):
    """An invariant the implementation guarantees was violated; a bug."""


class GraphFormatError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DisconnectedGraphError(InputError):
    pass


class TruncatedGeodesicsError(InputError):
    pass


class NotInSupportError(InputError):
    pass


class MissingCylinderError(InputError):
    pass


class GroupError(InputError):
    pass


class NotASubgroupError(GroupError):
    pass


class SimplexCountError(InputError):
    pass


class PresentationError(InputError):
    pass


class FoliationError(InputError):
    pass


class LatticeError(InputError):
    pass


class NotReducedError(InputError):
    pass


class ConsistencyError(InternalError):
    pass
