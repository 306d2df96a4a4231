"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CCSError(Exception):
    """Base class for every error raised by the toolkit."""


class TauHasNoLabel(CCSError, ValueError):
    pass


class InvalidRelabeling(CCSError, ValueError):
    pass


class CaptureRisk(CCSError, ValueError):
    pass


class ParseError(CCSError, ValueError):
    def __init__(self, message, span=(0, 0), expected=()):
        if not message:
            message = "parse error"
        self.message = message
        self.span = span
        self.expected = list(expected)
        super().__init__(f"{message} at offset {span[0]}")


class SemanticsError(CCSError):
    pass


class UnguardedRecursion(SemanticsError):
    pass


class FreeVariable(SemanticsError):
    pass


class DepthExceeded(SemanticsError):
    pass


class LtsError(CCSError):
    pass


class StateSpaceExceeded(LtsError):
    pass


class EdgeSpaceExceeded(LtsError):
    pass


class NotAPrefix(CCSError, ValueError):
    pass


class EmptySum(CCSError, ValueError):
    pass


class NotPrefixedSum(CCSError, ValueError):
    pass


class UnknownLaw(CCSError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown law"
