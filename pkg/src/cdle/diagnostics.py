"""Diagnostic codes and records shared by the checker and the frontend."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional


class Code(str, enum.Enum):
    PARSE_ERROR = "ParseError"
    UNBOUND_VARIABLE = "UnboundVariable"
    DUPLICATE_DEFINITION = "DuplicateDefinition"
    HEAD_MISMATCH = "HeadMismatch"
    NOT_SYNTHESIZABLE = "NotSynthesizable"
    KIND_MISMATCH = "KindMismatch"
    CONVERSION_FAILED = "ConversionFailed"
    ERASED_VAR_ESCAPES = "ErasedVarEscapes"
    INTERSECTION_ERASURE_MISMATCH = "IntersectionErasureMismatch"
    EQUATION_MISMATCH = "EquationMismatch"
    KLEENE_SCOPE = "KleeneScope"
    DELTA_PREMISE = "DeltaPremise"
    RHO_NO_MATCH = "RhoNoMatch"
    FUEL_EXHAUSTED = "FuelExhausted"
    FAIL_ACCEPTED = "FailDirectiveAccepted"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start: int
    end: int
    line: int
    col: int
    end_line: int
    end_col: int


@dataclass
class Diagnostic:
    code: Code
    message: str
    span: Optional[SourceSpan] = None
    expected: Optional[str] = None
    actual: Optional[str] = None
    fuel: Optional[str] = None
    severity: str = "error"

    def format(self) -> str:
        if self.span is not None:
            where = f"{self.span.file}:{self.span.line}:{self.span.col}"
        else:
            where = "<input>:0:0"
        text = f"{where}: {self.code}: {self.message}"
        if self.expected is not None:
            text += f"\n  expected: {self.expected}"
        if self.actual is not None:
            text += f"\n  actual:   {self.actual}"
        if self.fuel is not None:
            text += f"\n  fuel:     {self.fuel}"
        return text

    def to_json(self) -> dict:
        span = self.span
        return {
            "file": span.file if span else None,
            "line": span.line if span else None,
            "col": span.col if span else None,
            "code": str(self.code),
            "message": self.message,
            "expected": self.expected,
            "actual": self.actual,
        }


class TypeCheckError(Exception):
    def __init__(self, diagnostic: Diagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic

    @property
    def code(self) -> Code:
        return self.diagnostic.code
