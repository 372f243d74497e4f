"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Bad argument or precondition failure; maps to CLI exit code 1."""


class EdgeListParseError(ValidationError):
    """Malformed edge-list input. The message names the offending line."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class InvariantViolation(RuntimeError):
    """A runtime-checked algorithm invariant failed.

    These checks guard the properties the algorithms are supposed to
    maintain (monotone growth of maintained values, buffer size bounds,
    acceptance thresholds). A violation means an implementation bug, never
    bad user input.
    """
