"""Shared exception types, grouped by how the CLI maps them to exit codes."""


class SuperspreadError(Exception):
    """Base class for all package errors."""


class ParseError(SuperspreadError):
    """Malformed or unusable input data (CLI exit code 2)."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ConvergenceError(SuperspreadError):
    """An iterative numerical method failed to converge (CLI exit code 3).

    Carries the residual at the iteration cap.
    """

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class UsageError(SuperspreadError):
    """Invalid flags, config values, or argument combinations (CLI exit code 1)."""


class StageError(SuperspreadError):
    """Pipeline stage failure; tags the failing stage and chains the cause."""

    def __init__(self, stage, cause):
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.__cause__ = cause
