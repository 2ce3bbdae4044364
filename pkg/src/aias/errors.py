"""Exception types shared across the toolkit."""

from __future__ import annotations


class AiasError(Exception):
    """Base class for all toolkit errors."""


class MalformedCurie(AiasError, ValueError):
    pass


class UnboundPrefix(AiasError, KeyError):
    def __init__(self, label: str):
        super().__init__(label)
        self.label = label

    def __str__(self) -> str:
        return f"unbound prefix {self.label!r}"


class ParseError(AiasError):
    """Syntax error in a Turtle, rule or query document.

    ``line`` and ``column`` are 1-based; ``offset`` is the 0-based character
    index and never exceeds the document length.
    """

    def __init__(self, message: str, line: int, column: int, token: str = "", offset: int = 0):
        super().__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        self.offset = offset

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class UnknownSchema(AiasError, KeyError):
    def __str__(self) -> str:
        return f"unknown schema {self.args[0]!r}"


class UnknownClass(AiasError, KeyError):
    def __str__(self) -> str:
        return f"unknown class {self.args[0]}"


class MalformedSchema(AiasError, ValueError):
    pass


class UnsafeRule(AiasError, ValueError):
    pass


class MalformedShape(AiasError, ValueError):
    pass


class UnprojectableVariable(AiasError, ValueError):
    pass
