"""Top-level declarations of a source file."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .diagnostics import SourceSpan
from .syntax import Name


@dataclass(frozen=True)
class Define:
    name: Name
    classifier: object  # TypeExpr for a term definition, KindExpr for a type
    body: object
    span: Optional[SourceSpan] = field(default=None, compare=False)

    @property
    def is_term(self) -> bool:
        return self.name.is_term


@dataclass(frozen=True)
class CheckDirective:
    term: object
    type: object
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class FailDirective:
    term: object
    type: object
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class ConvDirective:
    lhs: object
    rhs: object
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class NormDirective:
    term: object
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class SynthDirective:
    term: object
    span: Optional[SourceSpan] = field(default=None, compare=False)


Decl = Union[Define, CheckDirective, FailDirective, ConvDirective, NormDirective,
             SynthDirective]
