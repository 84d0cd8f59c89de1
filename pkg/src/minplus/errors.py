"""Exception types shared across the package."""


class EmptyQueue(IndexError):
    pass


class BadRange(ValueError):
    pass


class ShiftOutOfDomain(ValueError):
    pass


class DomainError(ValueError):
    pass


class SizeError(ValueError):
    pass


class NotConvex(ValueError):
    pass


class NotConcave(ValueError):
    pass


class MalformedPLF(ValueError):
    pass


class ObjectiveClassError(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class TooLarge(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
