"""Source locations and coded diagnostics shared by the parser and the checker."""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass
from typing import Iterable, TextIO

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True, order=True)
class Location:
    file: str = "<memory>"
    line: int = 0
    column: int = 0

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


NOWHERE = Location()


@dataclass(frozen=True)
class Diagnostic:
    code: str
    severity: str
    message: str
    location: Location = NOWHERE

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def sort_key(self):
        loc = self.location
        return (loc.file, loc.line, loc.column, self.code, self.message)

    def render(self, color: bool = False) -> str:
        severity = self.severity
        if color:
            shade = "31" if self.is_error else "33"
            severity = f"\x1b[{shade}m{severity}\x1b[0m"
        return f"{self.location}: {severity} {self.code}: {self.message}"


def error(code: str, message: str, location: Location = NOWHERE) -> Diagnostic:
    return Diagnostic(code, ERROR, message, location)


def warning(code: str, message: str, location: Location = NOWHERE) -> Diagnostic:
    return Diagnostic(code, WARNING, message, location)


def sort_diagnostics(diags: Iterable[Diagnostic]) -> list[Diagnostic]:
    """Deduplicate and order by (file, line, column, code)."""
    return sorted(set(diags), key=Diagnostic.sort_key)


def has_errors(diags: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diags)


def use_color(stream: TextIO) -> bool:
    mode = os.environ.get("ARCHVAR_COLOR", "auto").lower()
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def print_diagnostics(diags: Iterable[Diagnostic], stream: TextIO = sys.stdout) -> None:
    color = use_color(stream)
    for diag in diags:
        print(diag.render(color), file=stream)
