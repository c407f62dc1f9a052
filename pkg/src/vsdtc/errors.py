"""Exception hierarchy.

Every exception carries a short ``code`` that the CLI prints as the first
token of its one-line error message.
"""


class VSDTCError(Exception):
    code = "Error"


class InvalidInput(VSDTCError, ValueError):
    code = "InvalidInput"


class IsolatedEdge(InvalidInput):
    code = "IsolatedEdge"


class IncompleteColoring(VSDTCError):
    code = "IncompleteColoring"


class BadVertex(VSDTCError):
    code = "BadVertex"


class PreconditionViolated(VSDTCError, ValueError):
    code = "PreconditionViolated"


class NotAForest(InvalidInput):
    code = "NotAForest"


class NotATree(InvalidInput):
    code = "NotATree"


class NoSafeColor(VSDTCError):
    code = "NoSafeColor"


class ExtensionFailure(VSDTCError):
    code = "ExtensionFailure"


class SearchTimeout(VSDTCError):
    """Budget exhausted before the search space was."""

    code = "Timeout"

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats
