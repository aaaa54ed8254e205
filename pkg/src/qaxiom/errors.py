"""Exception hierarchy shared by the symbolic, numeric and CLI layers."""


class QAxiomError(Exception):
    """Base class for every error raised by qaxiom."""


# symbolic layer

class UnknownGenerator(QAxiomError):
    pass


class UnknownSymbol(QAxiomError):
    pass


class NotCentral(QAxiomError):
    pass


class DuplicatePair(QAxiomError):
    pass


class NonLinearSubstitution(QAxiomError):
    pass


class MissingDimension(QAxiomError):
    def __init__(self, missing):
        self.missing = sorted(missing)
        super().__init__("no dimension given for: " + ", ".join(self.missing))


class NonInvertible(QAxiomError):
    pass


# numeric layer

class InvalidTruncation(QAxiomError):
    pass


class InvalidGrid(QAxiomError):
    pass


class MissingParam(QAxiomError):
    pass


class NonHermitian(QAxiomError):
    pass


class NonHermitianObservable(NonHermitian):
    pass


class TruncationTooSmall(QAxiomError):
    pass


class UnnormalizedState(QAxiomError):
    pass


class InvalidParam(QAxiomError):
    pass


class OpenPath(QAxiomError):
    pass


class NonPositiveQuantum(QAxiomError):
    pass


# front end

class ParseError(QAxiomError):
    """Malformed input text. ``line`` is 1-based when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ExpressionSyntaxError(ParseError):
    """Syntax error inside an expression, at a 1-based character position."""

    def __init__(self, message, position, expected=(), line=None):
        self.position = position
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at position {position}"
        if self.expected:
            detail += " (expected " + " or ".join(repr(t) for t in self.expected) + ")"
        super().__init__(detail, line=line)


class UsageError(QAxiomError):
    pass
