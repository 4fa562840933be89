"""Kinding judgments and bidirectional type checking.

The checker is deterministic: wherever a rule needs a type of a particular
shape, the type is first put in weak head normal form, and conversion fully
normalizes both sides.  Every judgment draws on one shared :class:`Fuel`.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Callable, Optional

from . import printer
from .diagnostics import Code, Diagnostic, TypeCheckError
from .conversion import Conv, convert_kinds, convert_types, type_beta_normalize, type_whnf
from .erasure import erase
from .lam import DEFAULT_FUEL, Equiv, Fuel, as_fuel, beta_eta_equal, free_names
from .syntax import (STAR, AllTerm, AllType, App, AppTerm, AppType, Beta, BVar,
                     Chi, Context, Delta, Eq, ErasedApp, Iota, Lam, Name,
                     Namespace, Pair, Phi, Pi, PiTerm, PiType, Proj1, Proj2,
                     Rho, Star, TBVar, TLam, TVar, TyLamTerm, TyLamType,
                     TERM_CLASSES, TypeApp, UnboundVariable, Var, close,
                     fields_of, fv, open_name, open_term, open_type)
from .stack import deep


TT = Lam(Lam(BVar(1), "y"), "x")
FF = Lam(Lam(BVar(0), "y"), "x")
TT_EQ_FF = Eq(TT, FF)


def _fresh(ns: Namespace, hint: str) -> Name:
    return Name.fresh(ns, hint)


# ---------------------------------------------------------------------------
# Rewriting for rho


@deep
def rho_rewrite(e, frm, to):
    """Replace every term leaf occurrence in ``e`` whose erasure is
    alpha-equivalent to that of ``frm`` by ``to``.  Returns ``(e', count)``."""
    pattern = erase(frm)
    count = 0

    def walk(e):
        nonlocal count
        if isinstance(e, TERM_CLASSES) and erase(e) == pattern:
            count += 1
            return to
        if isinstance(e, (Var, BVar, TVar, TBVar, Star)):
            return e
        changes = {}
        for attr, (dt, dy) in fields_of(e):
            old = getattr(e, attr)
            if dt or dy:
                x = _fresh(Namespace.TERM if dt else Namespace.TYPE, e.hint)
                new = close(walk(open_name(old, x)), x)
                if new == old:
                    new = old
            else:
                new = walk(old)
            if new is not old:
                changes[attr] = new
        return replace(e, **changes) if changes else e

    return walk(e), count


# ---------------------------------------------------------------------------


class Checker:
    """Runs the kinding and typing judgments against one fuel budget.

    ``verified`` maps ``id(node)`` of closed ``χ`` annotations already known to
    be well typed (inlined definitions); it may be shared between checkers.
    ``on_synth`` is called with ``(ctx, term, type)`` for each successful
    synthesis.  ``show`` renders expressions in diagnostics and trace lines.
    """

    def __init__(self, fuel: "Fuel | int" = DEFAULT_FUEL, trace: Optional[Callable[[str], None]] = None,
                 verified: Optional[dict] = None,
                 on_synth: Optional[Callable] = None,
                 show: Optional[Callable] = None):
        self.fuel = as_fuel(fuel)
        self.show = show or printer.show
        self.trace = trace
        self.verified = {} if verified is None else verified
        self.on_synth = on_synth
        self.warnings: list[Diagnostic] = []
        self._depth = 0

    # -- helpers -----------------------------------------------------------

    def fail(self, code, message, expected=None, actual=None):
        fuel = None
        if code is Code.FUEL_EXHAUSTED:
            fuel = f"used {self.fuel.used} of {self.fuel.initial} steps"
        raise TypeCheckError(Diagnostic(
            code, message,
            expected=None if expected is None else self.show(expected),
            actual=None if actual is None else self.show(actual),
            fuel=fuel))

    def _emit(self, rule, judgment):
        if self.trace is not None:
            self.trace("  " * self._depth + f"{rule}: {judgment}")

    def _rule(self, rule, render):
        if self.trace is not None:
            self._emit(rule, render())
        return _Depth(self)

    def out_of_fuel(self, what):
        self.fail(Code.FUEL_EXHAUSTED, f"fuel exhausted while {what}")

    def _whnf(self, t):
        r, exhausted = type_whnf(t, self.fuel)
        if exhausted:
            self.out_of_fuel("reducing a type to head normal form")
        return r

    def _normalize(self, t):
        r, exhausted = type_beta_normalize(t, self.fuel)
        if exhausted:
            self.out_of_fuel("normalizing a type")
        return r

    def _equal_erasures(self, a, b):
        r = beta_eta_equal(erase(a), erase(b), self.fuel)
        if r is Equiv.EXHAUSTED:
            self.out_of_fuel(
                f"comparing {self.show(a)} and {self.show(b)} up to βη")
        return r is Equiv.EQUAL

    def require_conv(self, actual, expected):
        r = convert_types(actual, expected, self.fuel)
        if r is Conv.EXHAUSTED:
            self.out_of_fuel("deciding type conversion")
        if r is Conv.NOT_CONVERTIBLE:
            self.fail(Code.CONVERSION_FAILED, "type mismatch",
                       expected=expected, actual=actual)

    def require_kinds(self, actual, expected):
        r = convert_kinds(actual, expected, self.fuel)
        if r is Conv.EXHAUSTED:
            self.out_of_fuel("deciding kind conversion")
        if r is Conv.NOT_CONVERTIBLE:
            self.fail(Code.KIND_MISMATCH, "kind mismatch",
                       expected=expected, actual=actual)

    def _scope(self, ctx, names, code, what):
        missing = sorted((n for n in names if n not in ctx), key=lambda n: n.text)
        if missing:
            self.fail(code, f"{what} mentions undeclared "
                             + ", ".join(n.text for n in missing))

    def _lookup(self, ctx, name):
        try:
            return ctx.lookup(name)
        except UnboundVariable:
            self.fail(Code.UNBOUND_VARIABLE, f"unbound variable {name.text}")

    def _expect_head(self, t, cls, what):
        h = self._whnf(t)
        if type(h) is not cls:
            self.fail(Code.HEAD_MISMATCH, f"{what}: expected a type of the form "
                       f"{_FORMERS[cls]}", actual=t)
        return h

    def expect_star(self, ctx, t):
        k = self.kind_synth(ctx, t)
        if type(k) is not Star:
            self.fail(Code.KIND_MISMATCH, f"{self.show(t)} is not a type",
                       expected=STAR, actual=k)

    # -- kinds ---------------------------------------------------------------

    @deep
    def wf_kind(self, ctx: Context, k) -> None:
        cls = type(k)
        if cls is Star:
            self._emit("★", "⊢ ★")
            return
        with self._rule(f"Π-kind/{'term' if cls is PiTerm else 'type'}",
                        lambda: f"⊢ {self.show(k)}"):
            x = _fresh(Namespace.TERM if cls is PiTerm else Namespace.TYPE, k.hint)
            if cls is PiTerm:
                self.expect_star(ctx, k.dom)
                self.wf_kind(ctx.extend(x, k.dom), open_name(k.body, x))
            else:
                self.wf_kind(ctx, k.kind)
                self.wf_kind(ctx.extend(x, k.kind), open_name(k.body, x))

    # -- types -------------------------------------------------------------

    @deep
    def kind_synth(self, ctx: Context, t):
        cls = type(t)
        rule = _KIND_RULES.get(cls)
        if rule is None:
            self.fail(Code.UNBOUND_VARIABLE, "dangling bound type variable")
        with self._rule(rule, lambda: f"⊢ {self.show(t)} ⇒ ?"):
            return self._kind_synth(ctx, t, cls)

    def _kind_synth(self, ctx, t, cls):
        if cls is TVar:
            return self._lookup(ctx, t.name)
        if cls is AllType or cls is TyLamType:
            self.wf_kind(ctx, t.kind)
            x = _fresh(Namespace.TYPE, t.hint)
            k = self.kind_synth(ctx.extend(x, t.kind), open_name(t.body, x))
            if cls is TyLamType:
                return PiType(t.kind, close(k, x), t.hint)
            if type(k) is not Star:
                self.fail(Code.KIND_MISMATCH, "body of ∀ is not a type",
                           expected=STAR, actual=k)
            return STAR
        if cls in (AllTerm, Pi, Iota, TyLamTerm):
            self.expect_star(ctx, t.dom)
            x = _fresh(Namespace.TERM, t.hint)
            inner = ctx.extend(x, t.dom)
            body = open_name(t.body, x)
            if cls is TyLamTerm:
                return PiTerm(t.dom, close(self.kind_synth(inner, body), x), t.hint)
            self.expect_star(inner, body)
            return STAR
        if cls is AppTerm:
            k = self.kind_synth(ctx, t.fn)
            if type(k) is not PiTerm:
                self.fail(Code.HEAD_MISMATCH, "type applied to a term does not "
                           "have a Π kind over terms", actual=k)
            self.type_check(ctx, t.arg, k.dom)
            return open_term(k.body, t.arg)
        if cls is AppType:
            k = self.kind_synth(ctx, t.fn)
            if type(k) is not PiType:
                self.fail(Code.HEAD_MISMATCH, "type applied to a type does not "
                           "have a Π kind over types", actual=k)
            self.require_kinds(self.kind_synth(ctx, t.arg), k.kind)
            return open_type(k.body, t.arg)
        if cls is Eq:
            self._scope(ctx, fv(t.lhs) | fv(t.rhs), Code.UNBOUND_VARIABLE, "equation")
            return STAR
        raise TypeError(f"not a type: {t!r}")

    # -- terms -------------------------------------------------------------

    @deep
    def type_check(self, ctx: Context, t, expected) -> None:
        cls = type(t)
        rule = _CHECK_RULES.get(cls, "⇒/≅")
        with self._rule(rule, lambda: f"⊢ {self.show(t)} ⇐ {self.show(expected)}"):
            self._check(ctx, t, expected, cls)

    def _check(self, ctx, t, expected, cls):
        if cls is Lam:
            h = self._expect_head(expected, Pi, "λ-abstraction")
            x = _fresh(Namespace.TERM, t.hint)
            self.type_check(ctx.extend(x, h.dom), open_name(t.body, x), open_name(h.body, x))
        elif cls is TLam and t.ns is Namespace.TYPE:
            h = self._expect_head(expected, AllType, "Λ over a type")
            x = _fresh(Namespace.TYPE, t.hint)
            self.type_check(ctx.extend(x, h.kind), open_name(t.body, x), open_name(h.body, x))
        elif cls is TLam:
            h = self._expect_head(expected, AllTerm, "Λ over a term")
            x = _fresh(Namespace.TERM, t.hint)
            body = open_name(t.body, x)
            self.type_check(ctx.extend(x, h.dom), body, open_name(h.body, x))
            if x in free_names(erase(body)):
                self.fail(Code.ERASED_VAR_ESCAPES,
                           f"erased variable {t.hint} occurs in the erasure of the body")
        elif cls is Pair:
            h = self._expect_head(expected, Iota, "dependent intersection")
            self.type_check(ctx, t.left, h.dom)
            self.type_check(ctx, t.right, open_term(h.body, t.left))
            if not self._equal_erasures(t.left, t.right):
                self.fail(Code.INTERSECTION_ERASURE_MISMATCH,
                           "components of [t, t'] do not have βη-equal erasures",
                           expected=t.left, actual=t.right)
        elif cls is Beta:
            h = self._expect_head(expected, Eq, "β")
            self._scope(ctx, fv(h.lhs) | fv(h.rhs), Code.UNBOUND_VARIABLE, "equation")
            self._scope(ctx, free_names(erase(t.witness)), Code.KLEENE_SCOPE,
                        "erasure of the β witness")
            if not self._equal_erasures(h.lhs, h.rhs):
                self.fail(Code.EQUATION_MISMATCH, "β proves only equations whose "
                           "sides are βη-equal", expected=h.lhs, actual=h.rhs)
        elif cls is Delta:
            try:
                self.type_check(ctx, t.term, TT_EQ_FF)
            except TypeCheckError as err:
                if err.code is Code.FUEL_EXHAUSTED:
                    raise
                self.fail(Code.DELTA_PREMISE,
                           "δ needs a proof of {λ x . λ y . x ≃ λ x . λ y . y}: "
                           + err.diagnostic.message)
        elif cls is Rho:
            a, b = self._equation(ctx, t.eq)
            rewritten, n = rho_rewrite(self._normalize(expected), b, a)
            self._rho_matches(n, b, expected)
            self.type_check(ctx, t.body, rewritten)
        elif cls is Chi:
            self._check_annotation(ctx, t)
            self.require_conv(t.type, expected)
        elif cls is Phi:
            self.type_check(ctx, t.typed, expected)
            self._phi_equation(ctx, t)
        else:
            self.require_conv(self.type_synth(ctx, t), expected)

    @deep
    def type_synth(self, ctx: Context, t):
        cls = type(t)
        rule = _SYNTH_RULES.get(cls)
        if rule is None:
            if cls is BVar:
                self.fail(Code.UNBOUND_VARIABLE, "dangling bound variable")
            self.fail(Code.NOT_SYNTHESIZABLE,
                       f"cannot synthesize a type for {self.show(t)}; annotate with χ")
        with self._rule(rule, lambda: f"⊢ {self.show(t)} ⇒ ?"):
            result = self._synth(ctx, t, cls)
        if self.on_synth is not None:
            self.on_synth(ctx, t, result)
        return result

    def _synth(self, ctx, t, cls):
        if cls is Var:
            return self._lookup(ctx, t.name)
        if cls is App:
            h = self._expect_head(self.type_synth(ctx, t.fn), Pi, "application")
            self.type_check(ctx, t.arg, h.dom)
            return open_term(h.body, t.arg)
        if cls is ErasedApp:
            h = self._expect_head(self.type_synth(ctx, t.fn), AllTerm, "erased application")
            self.type_check(ctx, t.arg, h.dom)
            return open_term(h.body, t.arg)
        if cls is TypeApp:
            h = self._expect_head(self.type_synth(ctx, t.fn), AllType, "type application")
            self.require_kinds(self.kind_synth(ctx, t.arg), h.kind)
            return open_type(h.body, t.arg)
        if cls is Proj1:
            return self._expect_head(self.type_synth(ctx, t.term), Iota, "projection").dom
        if cls is Proj2:
            h = self._expect_head(self.type_synth(ctx, t.term), Iota, "projection")
            return open_term(h.body, Proj1(t.term))
        if cls is Chi:
            self._check_annotation(ctx, t)
            return t.type
        if cls is Rho:
            a, b = self._equation(ctx, t.eq)
            body_type = self.type_synth(ctx, t.body)
            rewritten, n = rho_rewrite(self._normalize(body_type), a, b)
            self._rho_matches(n, a, body_type)
            return rewritten
        if cls is Phi:
            result = self.type_synth(ctx, t.typed)
            self._phi_equation(ctx, t)
            return result
        raise AssertionError(cls)

    def _equation(self, ctx, q):
        h = self._expect_head(self.type_synth(ctx, q), Eq, "ρ")
        return h.lhs, h.rhs

    def _rho_matches(self, n, pattern, where):
        if n == 0:
            self.warnings.append(Diagnostic(
                Code.RHO_NO_MATCH,
                f"ρ found no occurrence of {self.show(pattern)} in "
                f"{self.show(where)}", severity="warning"))

    def _phi_equation(self, ctx, t):
        eq = Eq(t.typed, t.target)
        self._scope(ctx, fv(t.typed) | fv(t.target), Code.UNBOUND_VARIABLE, "φ equation")
        self.type_check(ctx, t.eq, eq)

    def _check_annotation(self, ctx, t):
        cached = self.verified.get(id(t))
        if cached is t:
            return
        self.expect_star(ctx, t.type)
        self.type_check(ctx, t.term, t.type)
        if not fv(t):
            self.verified[id(t)] = t


class _Depth:
    __slots__ = ("checker",)

    def __init__(self, checker):
        self.checker = checker

    def __enter__(self):
        self.checker._depth += 1

    def __exit__(self, *exc):
        self.checker._depth -= 1
        return False


_FORMERS = {Pi: "Π x : T . T'", AllTerm: "∀ x : T . T'", AllType: "∀ X : κ . T",
            Iota: "ι x : T . T'", Eq: "{ t ≃ t' }"}

_KIND_RULES = {
    TVar: "tvar", AllType: "∀-type", AllTerm: "∀-term", Pi: "Π", Iota: "ι",
    TyLamTerm: "λ-type/term", TyLamType: "λ-type/type", AppTerm: "app-type/term",
    AppType: "app-type/type", Eq: "≃",
}
_CHECK_RULES = {
    Lam: "λ", TLam: "Λ", Pair: "[,]", Beta: "β", Delta: "δ", Rho: "ρ⇐", Chi: "χ⇐",
    Phi: "φ⇐",
}
_SYNTH_RULES = {
    Var: "var", App: "app", ErasedApp: "app-erased", TypeApp: "app-type",
    Proj1: ".1", Proj2: ".2", Chi: "χ⇒", Rho: "ρ⇒", Phi: "φ⇒",
}


# ---------------------------------------------------------------------------
# Functional entry points


def wf_kind(ctx: Context, k, fuel: "Fuel | int" = DEFAULT_FUEL) -> None:
    Checker(fuel).wf_kind(ctx, k)


def kind_synth(ctx: Context, t, fuel: "Fuel | int" = DEFAULT_FUEL):
    return Checker(fuel).kind_synth(ctx, t)


def type_check(ctx: Context, t, expected, fuel: "Fuel | int" = DEFAULT_FUEL) -> None:
    Checker(fuel).type_check(ctx, t, expected)


def type_synth(ctx: Context, t, fuel: "Fuel | int" = DEFAULT_FUEL):
    return Checker(fuel).type_synth(ctx, t)
