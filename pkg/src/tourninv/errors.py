"""Exception types shared across the package.

The CLI maps the first two to exit code 2 and the last two to exit code 3.
"""


class TournError(Exception):
    pass


class FormatError(TournError, ValueError):
    """Malformed text input (tournament lines, sequence files)."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InputError(TournError, ValueError):
    """Arguments violate an operation's preconditions."""


class CapacityError(TournError):
    """Instance too large for an exact method."""


class UnsupportedError(TournError):
    """Parameter outside the supported set (e.g. q not a prime power)."""
