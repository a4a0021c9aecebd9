"""Exception hierarchy shared by every module.

Each error carries a stable machine-readable ``code`` plus a ``details``
dict so the CLI can emit structured error objects (exit code 3).
"""

from __future__ import annotations


class QmstError(Exception):
    """Base class for all errors raised by this package."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details


class LoopEdge(QmstError):
    code = "loop-edge"


class DuplicateEdge(QmstError):
    code = "duplicate-edge"


class Disconnected(QmstError):
    code = "disconnected"


class IndexOutOfRange(QmstError):
    code = "index-out-of-range"


class TooManyTrees(QmstError):
    code = "too-many-trees"

    def __init__(self, count: int, cap: int):
        super().__init__(
            f"spanning tree count {count} exceeds cap {cap}", count=count, cap=cap
        )
        self.count = count
        self.cap = cap


class DimensionMismatch(QmstError):
    code = "dimension-mismatch"


class NotSymmetric(QmstError):
    code = "not-symmetric"


class LengthMismatch(QmstError):
    code = "length-mismatch"


class NotSymmetricOffDiagonal(QmstError):
    code = "not-symmetric-off-diagonal"


class TooLarge(QmstError):
    code = "too-large"


class WrongGraphClass(QmstError):
    code = "wrong-graph-class"


class BadParams(QmstError):
    code = "bad-params"


class ParseError(QmstError):
    code = "parse-error"


class ValidationError(QmstError):
    code = "validation-error"
