"""Exception hierarchy shared by the codec, ops and CLI layers."""


class NentError(Exception):
    """Base class for all library errors."""


class ParameterError(NentError):
    """Invalid or infeasible codec/operation parameters."""


class RangeError(NentError):
    """A value violates a dynamic-range bound.

    Carries enough context to identify the offending element.
    """

    def __init__(self, message, stream=None, position=None, value=None, bound=None):
        super().__init__(message)
        self.stream = stream
        self.position = position
        self.value = value
        self.bound = bound


class AdmissionError(RangeError):
    """An operation was rejected by the worst-case output bound check."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class UnrecoverableError(NentError):
    """A fail-stop failure occurred under a scheme with no redundancy."""


class FormatError(NentError):
    """Malformed stream file."""


class RecoveryMismatchError(NentError):
    """Recovered outputs disagree across failure indices."""
