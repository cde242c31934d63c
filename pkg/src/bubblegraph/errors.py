"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class BubbleGraphError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class UsageError(BubbleGraphError):
    """Bad arguments, or an oracle asked to work beyond its size guard."""

    exit_code = 1


class InputError(BubbleGraphError):
    """Malformed input: unknown vertex, bad token, self-loop, and so on."""

    exit_code = 2

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ContractViolation(BubbleGraphError):
    """A documented precondition does not hold, e.g. tips in a tipless-only routine."""

    exit_code = 3

    def __init__(self, message: str, witness: object = None) -> None:
        self.witness = witness
        super().__init__(message)
