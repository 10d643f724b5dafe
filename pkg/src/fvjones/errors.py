"""Exception types shared across the package."""


class FVError(Exception):
    """Base class for all fvjones errors."""


class TangleSyntaxError(FVError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self._args = (message, line, column)

    def __reduce__(self):
        return type(self), self._args


class InvalidTangle(FVError):
    """The document parsed but the tangle violates one or more invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))

    def __reduce__(self):
        return type(self), (self.violations,)


class EmbeddingViolation(FVError):
    """A smoothed state is not realizable as a planar matching in the rectangle.

    Raised by the reduction and tracing code; ``state`` is filled in by the
    state sum once the offending state is known.
    """

    def __init__(self, message, state=None):
        super().__init__(message)
        self.message = message
        self.state = state

    def __reduce__(self):
        return type(self), (self.message, self.state)

    def __str__(self):
        if self.state is None:
            return self.message
        return f"{self.message} (state {self.state})"


class StateCapExceeded(FVError):
    def __init__(self, n, cap):
        super().__init__(f"{n} classical crossings exceeds the state cap of {cap}")
        self.n = n
        self.cap = cap

    def __reduce__(self):
        return type(self), (self.n, self.cap)
