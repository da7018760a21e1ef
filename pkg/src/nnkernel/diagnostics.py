"""Structured diagnostics shared by every stage."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

CODES = frozenset(
    {
        "ParseError",
        "UnresolvedName",
        "ArityMismatch",
        "UnboundVariable",
        "NotAFunction",
        "NotAPair",
        "NotAPath",
        "CannotInfer",
        "UniverseInconsistency",
        "CategorialMismatch",
        "TypeMismatch",
        "DuplicateName",
        "FuelExhausted",
        "UnknownPredicate",
        "UnknownLocus",
        "ModelError",
        "ExpectationFailed",
        "MissingEntry",
        "FileError",
        "InternalError",
    }
)

HETVABHASAS = ("asiddha", "viruddha", "anaikantika", "badhita")


@dataclass
class Span:
    file: str
    line: int
    col: int
    length: int
    offset: int = 0

    def to_json(self) -> dict:
        return {"file": self.file, "line": self.line, "col": self.col, "len": self.length}


@dataclass
class Diagnostic:
    code: str
    message: str
    span: Span | None = None
    expected: str | None = None
    actual: str | None = None
    hetvabhasa: str | None = None
    # Structured payload used by hetvabhasa enrichment; not serialized.
    expected_term: Any = field(default=None, repr=False, compare=False)
    actual_term: Any = field(default=None, repr=False, compare=False)
    goals: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.code not in CODES:
            raise ValueError(f"unknown diagnostic code {self.code!r}")

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "code": self.code,
            "span": self.span.to_json() if self.span else None,
            "message": self.message,
        }
        if self.expected is not None:
            out["expected"] = self.expected
        if self.actual is not None:
            out["actual"] = self.actual
        if self.hetvabhasa is not None:
            out["hetvabhasa"] = self.hetvabhasa
        return out

    def render(self) -> str:
        where = ""
        if self.span is not None:
            where = f"{self.span.file}:{self.span.line}:{self.span.col}: "
        lines = [f"{where}{self.code}: {self.message}"]
        if self.expected is not None:
            lines.append(f"  expected: {self.expected}")
        if self.actual is not None:
            lines.append(f"  actual:   {self.actual}")
        if self.hetvabhasa is not None:
            lines.append(f"  hetvabhasa: {self.hetvabhasa}")
        return "\n".join(lines)


class NNError(Exception):
    """Raised with exactly one diagnostic attached."""

    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic
