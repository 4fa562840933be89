"""Elaboration of parsed declarations into kernel checks.

Definitions never enter the typing context: once a definition checks, every
later occurrence of its name is replaced by its body.  Term definitions are
inlined as ``χ T - t`` so that they keep synthesizing their declared type.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from . import printer
from .checker import Checker
from .conversion import Conv, convert_types
from .decls import (CheckDirective, ConvDirective, Define, FailDirective,
                    NormDirective, SynthDirective)
from .diagnostics import Code, Diagnostic, TypeCheckError
from .erasure import erase
from .lam import DEFAULT_FUEL, Exhausted, Fuel, normalize
from .syntax import LEAVES, Chi, Context, TVar, Var, fields_of, transform
from .stack import deep


@dataclass
class DeclResult:
    decl: object
    diagnostics: list[Diagnostic] = field(default_factory=list)
    output: list[str] = field(default_factory=list)
    fuel_used: int = 0

    @property
    def ok(self) -> bool:
        return not any(d.severity == "error" for d in self.diagnostics)

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == "error"]


@dataclass
class Report:
    results: list[DeclResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def diagnostics(self) -> list[Diagnostic]:
        return [d for r in self.results for d in r.diagnostics]

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for r in self.results for d in r.errors]


class Elaborator:
    """Checks declarations in order, accumulating definitions for inlining."""

    def __init__(self, fuel: int = DEFAULT_FUEL, trace: Optional[Callable[[str], None]] = None,
                 print_erased: bool = False, on_synth: Optional[Callable] = None):
        self.fuel = fuel
        self.trace = trace
        self.print_erased = print_erased
        self.on_synth = on_synth
        self.terms: dict = {}
        self.types: dict = {}
        self.verified: dict = {}

    def inline(self, e):
        terms, types = self.terms, self.types

        def leaf(v, td, yd):
            if type(v) is Var:
                return terms.get(v.name, v)
            if type(v) is TVar:
                return types.get(v.name, v)
            return v

        return transform(e, leaf)

    def fold(self, e):
        """Replace inlined definition bodies by their names, for display."""
        if not self.types and not self.terms:
            return e
        keys = {}

        def key(x):
            # structural hash computed once per node; plain hashing is
            # quadratic on deep terms because dataclasses do not cache it
            k = keys.get(id(x))
            if k is None:
                if isinstance(x, LEAVES):
                    k = hash(x)
                else:
                    k = hash((type(x),) + tuple(key(getattr(x, a)) for a, _ in fields_of(x)))
                keys[id(x)] = k
            return k

        names = {}
        for n, body in self.types.items():
            names.setdefault(key(body), []).append((body, TVar(n)))
        for n, chi in self.terms.items():
            names.setdefault(key(chi), []).append((chi, Var(n)))

        def go(x):
            for body, name in names.get(key(x), ()):
                if body is x or body == x:
                    return name
            if isinstance(x, LEAVES):
                return x
            changes = {a: go(getattr(x, a)) for a, _ in fields_of(x)}
            return replace(x, **changes)

        return go(e)

    def checker(self) -> Checker:
        return Checker(Fuel(self.fuel), trace=self.trace, verified=self.verified,
                       on_synth=self.on_synth, show=self.show)

    def show(self, e) -> str:
        return printer.show(self.fold(e))

    def run(self, decls) -> Report:
        return Report([self.elaborate_one(d) for d in decls])

    @deep
    def elaborate_one(self, decl) -> DeclResult:
        result = DeclResult(decl)
        checker = self.checker()
        try:
            self._dispatch(decl, checker, result)
        except TypeCheckError as err:
            result.diagnostics.append(err.diagnostic)
        except RecursionError:
            result.diagnostics.append(Diagnostic(
                Code.FUEL_EXHAUSTED, "term nesting exceeds the evaluator's depth limit",
                fuel=f"used {checker.fuel.used} of {checker.fuel.initial} steps"))
        result.diagnostics[:0] = checker.warnings
        for d in result.diagnostics:
            if d.span is None:
                d.span = decl.span
        result.fuel_used = checker.fuel.used
        return result

    def _dispatch(self, decl, checker, result):
        ctx = Context()
        if isinstance(decl, Define):
            self._define(decl, checker, result)
        elif isinstance(decl, CheckDirective):
            t, ty = self.inline(decl.term), self.inline(decl.type)
            checker.expect_star(ctx, ty)
            checker.type_check(ctx, t, ty)
            self._erased(result, t)
        elif isinstance(decl, FailDirective):
            t, ty = self.inline(decl.term), self.inline(decl.type)
            try:
                checker.expect_star(ctx, ty)
                checker.type_check(ctx, t, ty)
            except TypeCheckError as err:
                # running out of fuel proves nothing about ill-typedness
                if err.code is Code.FUEL_EXHAUSTED:
                    raise
                # warnings belong to the rejected derivation
                checker.warnings.clear()
                result.output.append(f"rejected as expected: {err.code}: {err.diagnostic.message}")
            else:
                result.diagnostics.append(Diagnostic(
                    Code.FAIL_ACCEPTED, "#fail directive was accepted by the checker"))
        elif isinstance(decl, ConvDirective):
            a, b = self.inline(decl.lhs), self.inline(decl.rhs)
            checker.kind_synth(ctx, a)
            checker.kind_synth(ctx, b)
            r = convert_types(a, b, checker.fuel)
            if r is Conv.EXHAUSTED:
                checker.out_of_fuel("deciding type conversion")
            if r is Conv.NOT_CONVERTIBLE:
                checker.fail(Code.CONVERSION_FAILED, "types are not convertible",
                              expected=b, actual=a)
        elif isinstance(decl, NormDirective):
            p = erase(self.inline(decl.term))
            r = normalize(p, checker.fuel)
            if isinstance(r, Exhausted):
                result.output.append(f"Exhausted after {r.steps} steps: {printer.show(r.term)}")
                checker.out_of_fuel(f"normalizing (partial result after {r.steps} steps)")
            result.output.append(f"Normal ({r.steps} steps): {printer.show(r.term)}")
        elif isinstance(decl, SynthDirective):
            t = self.inline(decl.term)
            ty = checker.type_synth(ctx, t)
            result.output.append(f"{printer.show(decl.term)} ⇒ {self.show(ty)}")
            self._erased(result, t)
        else:
            raise TypeError(f"not a declaration: {decl!r}")

    def _define(self, decl, checker, result):
        name = decl.name
        if name in self.terms or name in self.types:
            raise TypeCheckError(Diagnostic(Code.DUPLICATE_DEFINITION,
                                            f"{name.text} is already defined"))
        ctx = Context()
        classifier = self.inline(decl.classifier)
        body = self.inline(decl.body)
        if decl.is_term:
            checker.expect_star(ctx, classifier)
            checker.type_check(ctx, body, classifier)
            chi = Chi(classifier, body)
            self.verified[id(chi)] = chi
            self.terms[name] = chi
            self._erased(result, body)
        else:
            checker.wf_kind(ctx, classifier)
            checker.require_kinds(checker.kind_synth(ctx, body), classifier)
            self.types[name] = body

    def _erased(self, result, t):
        if self.print_erased:
            result.output.append(f"erased: {printer.show(erase(t))}")


def elaborate(decls, fuel: int = DEFAULT_FUEL, **options) -> Report:
    return Elaborator(fuel, **options).run(decls)
