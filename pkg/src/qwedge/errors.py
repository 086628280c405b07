"""Exception types shared across the package."""


class QWedgeError(Exception):
    """Base class for all errors raised by qwedge."""


class NotDivisible(QWedgeError, ArithmeticError):
    pass


class LetterOutOfRange(QWedgeError, ValueError):
    pass


class TruncationTooShallow(QWedgeError, ValueError):
    pass


class BoundaryViolation(QWedgeError):
    """An operation would touch slots beyond the stored truncation depth."""

    def __init__(self, message: str, suggested_depth: int | None = None):
        super().__init__(message)
        self.suggested_depth = suggested_depth


class DivergentAction(QWedgeError):
    """The requested action is an infinite formal sum on this input."""


class NonTerminating(QWedgeError):
    pass


class RecognitionFailure(QWedgeError):
    pass


class TargetClassMismatch(QWedgeError, ValueError):
    pass


class SizeCap(QWedgeError, ValueError):
    pass


class ParseError(QWedgeError, ValueError):
    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset
