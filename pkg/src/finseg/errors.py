"""Exception types shared across the package. The CLI maps them to exit codes."""


class FinsegError(Exception):
    pass


class DomainError(FinsegError, ValueError):
    """An operation was applied outside its domain (e.g. graduation of the empty segment)."""


class AlphabetError(DomainError):
    pass


class ParseError(FinsegError, ValueError):
    """Malformed JSON or words outside the declared alphabet."""


class InvariantViolation(FinsegError, AssertionError):
    """A structural guarantee failed to hold; indicates a bug, never bad input."""
