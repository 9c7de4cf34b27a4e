"""Diagnostics for theory files: severities, source spans, and the elaboration error."""
from dataclasses import dataclass
from enum import Enum
from typing import List, Sequence

from ..symcore import MultiphaseError


class Severity(Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    """Location in source text; line and column are 1-based."""
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    """
    A message about a theory file.

    Attributes:
        severity: ERROR stops elaboration; WARNING does not
        span: Where the problem is
        message: What is wrong
        hint: How to fix it, when there is an obvious fix
    """
    severity: Severity
    span: SourceSpan
    message: str
    hint: str = ""

    def format(self, path: str = "<input>") -> str:
        text = f"{path}:{self.span}: {self.severity.value}: {self.message}"
        if self.hint:
            text += f" (hint: {self.hint})"
        return text


def error(span: SourceSpan, message: str, hint: str = "") -> Diagnostic:
    return Diagnostic(Severity.ERROR, span, message, hint)


def has_errors(diagnostics: Sequence[Diagnostic]) -> bool:
    return any(d.severity == Severity.ERROR for d in diagnostics)


class ElaborationError(MultiphaseError):
    """A theory document could not be turned into a Theory."""
    key = "errors.elaboration"

    def __init__(self, diagnostics: List[Diagnostic]):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0].message if self.diagnostics else "elaboration failed"
        super().__init__(first, count=len(self.diagnostics))
