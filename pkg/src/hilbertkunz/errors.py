"""Shared exception types."""


class UserError(Exception):
    """Bad input: malformed config, non-primary ideal, out-of-range argument."""


class ParseError(UserError):
    """Polynomial or config syntax error, with position information."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotPrimaryError(UserError):
    """The ideal is not primary to the irrelevant ideal."""


class CapExceededError(Exception):
    """A configured resource cap (degree, matrix size, exponent) was hit."""


class InternalError(AssertionError):
    """An internal consistency check failed; indicates a bug."""
