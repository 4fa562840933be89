"""Canonical concrete syntax for every syntactic category and for declarations.

Bound variables are printed from their binder hints, renamed when a hint
would shadow an enclosing binder or capture a free name.
"""

from __future__ import annotations

import re

from . import lam
from .decls import (CheckDirective, ConvDirective, Define, FailDirective,
                    NormDirective, SynthDirective)
from .erasure import embed
from .syntax import (AllTerm, AllType, App, AppTerm, AppType, Beta, BVar, Chi,
                     Delta, Eq, ErasedApp, Iota, Lam, Namespace, Pair, Phi, Pi,
                     PiTerm, PiType, Proj1, Proj2, Rho, Star, TBVar, TLam, TVar,
                     TyLamTerm, TyLamType, TypeApp, Var, category, fv)
from .stack import deep

KEYWORDS = frozenset({
    "def", "lam", "Lam", "Pi", "All", "iota", "beta", "delta", "rho", "chi", "phi",
})

_UNICODE = {
    "star": "★", "Pi": "Π", "All": "∀", "iota": "ι", "lam": "λ", "Lam": "Λ",
    "dot": "·", "eq": "≃", "conv": "≅", "beta": "β", "delta": "δ", "rho": "ρ",
    "chi": "χ", "phi": "φ",
}
_ASCII = {
    "star": "*", "Pi": "Pi", "All": "All", "iota": "iota", "lam": "lam",
    "Lam": "Lam", "dot": "@", "eq": "==", "conv": "~=", "beta": "beta",
    "delta": "delta", "rho": "rho", "chi": "chi", "phi": "phi",
}

TOP, HEAD, ATOM = 0, 1, 2

_CONSTRUCTS = (Delta, Rho, Chi, Phi)
_TERM_BINDERS = (Lam, TLam)
_TYPE_BINDERS = (AllType, AllTerm, Pi, Iota, TyLamTerm, TyLamType)
_IDENT_CHARS = re.compile(r"[^A-Za-z0-9_']")


def _sanitize(hint: str, ns: Namespace) -> str:
    base = _IDENT_CHARS.sub("", hint or "")
    if not base or base[0].isdigit() or base[0] == "'":
        base = "x" + base
    if ns is Namespace.TYPE:
        if not base[0].isupper():
            base = base[0].upper() + base[1:] if base[0].isalpha() else "X" + base
    elif base[0].isupper():
        base = base[0].lower() + base[1:]
    return base


class _Printer:
    def __init__(self, avoid: set[str], ascii: bool = False):
        self.avoid = set(avoid) | KEYWORDS
        self.sym = _ASCII if ascii else _UNICODE

    def bind(self, hint, ns, tenv, yenv):
        base = _sanitize(hint, ns)
        taken = self.avoid | set(tenv) | set(yenv)
        name, i = base, 1
        while name in taken:
            name = f"{base}{i}"
            i += 1
        return name

    @staticmethod
    def _paren(s, wrap):
        return f"({s})" if wrap else s

    # -- terms ---------------------------------------------------------------

    def term(self, t, tenv, yenv, level=TOP):
        s = self.sym
        cls = type(t)
        if cls is Var:
            return t.name.text
        if cls is BVar:
            return tenv[t.index] if t.index < len(tenv) else f"?{t.index}"
        if cls is Lam:
            x = self.bind(t.hint, Namespace.TERM, tenv, yenv)
            body = self.term(t.body, (x,) + tenv, yenv)
            return self._paren(f"{s['lam']} {x} . {body}", level >= HEAD)
        if cls is TLam:
            x = self.bind(t.hint, t.ns, tenv, yenv)
            if t.ns is Namespace.TERM:
                body = self.term(t.body, (x,) + tenv, yenv)
            else:
                body = self.term(t.body, tenv, (x,) + yenv)
            return self._paren(f"{s['Lam']} {x} . {body}", level >= HEAD)
        if cls in (App, ErasedApp, TypeApp):
            head = self.term(t.fn, tenv, yenv, HEAD)
            if cls is App:
                text = f"{head} {self.term(t.arg, tenv, yenv, ATOM)}"
            elif cls is ErasedApp:
                text = f"{head} - {self.term(t.arg, tenv, yenv, ATOM)}"
            else:
                text = f"{head} {s['dot']} {self.type(t.arg, tenv, yenv, ATOM)}"
            return self._paren(text, level >= ATOM)
        if cls is Pair:
            return (f"[{self.term(t.left, tenv, yenv)}, "
                    f"{self.term(t.right, tenv, yenv)}]")
        if cls is Proj1 or cls is Proj2:
            return self.term(t.term, tenv, yenv, ATOM) + (".1" if cls is Proj1 else ".2")
        if cls is Beta:
            return f"{s['beta']}{{{self.term(t.witness, tenv, yenv)}}}"
        if cls is Delta:
            text = f"{s['delta']} {self.term(t.term, tenv, yenv, ATOM)}"
        elif cls is Rho:
            text = (f"{s['rho']} {self.term(t.eq, tenv, yenv, ATOM)} - "
                    f"{self.term(t.body, tenv, yenv, ATOM)}")
        elif cls is Chi:
            text = (f"{s['chi']} {self.type(t.type, tenv, yenv, ATOM)} - "
                    f"{self.term(t.term, tenv, yenv, ATOM)}")
        elif cls is Phi:
            text = (f"{s['phi']} {self.term(t.eq, tenv, yenv, ATOM)} - "
                    f"{self.term(t.typed, tenv, yenv, ATOM)} "
                    f"{{{self.term(t.target, tenv, yenv)}}}")
        else:
            raise TypeError(f"not a term: {t!r}")
        return self._paren(text, level >= HEAD)

    # -- types ---------------------------------------------------------------

    def type(self, t, tenv, yenv, level=TOP):
        s = self.sym
        cls = type(t)
        if cls is TVar:
            return t.name.text
        if cls is TBVar:
            return yenv[t.index] if t.index < len(yenv) else f"?{t.index}"
        if cls in _TYPE_BINDERS:
            ns = Namespace.TYPE if cls in (AllType, TyLamType) else Namespace.TERM
            x = self.bind(t.hint, ns, tenv, yenv)
            if ns is Namespace.TYPE:
                classifier = self.kind(t.kind, tenv, yenv, HEAD)
                body = self.type(t.body, tenv, (x,) + yenv)
            else:
                classifier = self.type(t.dom, tenv, yenv, HEAD)
                body = self.type(t.body, (x,) + tenv, yenv)
            former = {AllType: "All", AllTerm: "All", Pi: "Pi", Iota: "iota",
                      TyLamTerm: "lam", TyLamType: "lam"}[cls]
            return self._paren(f"{s[former]} {x} : {classifier} . {body}", level >= HEAD)
        if cls is AppTerm:
            text = (f"{self.type(t.fn, tenv, yenv, HEAD)} "
                    f"{self.term(t.arg, tenv, yenv, ATOM)}")
            return self._paren(text, level >= ATOM)
        if cls is AppType:
            text = (f"{self.type(t.fn, tenv, yenv, HEAD)} {s['dot']} "
                    f"{self.type(t.arg, tenv, yenv, ATOM)}")
            return self._paren(text, level >= ATOM)
        if cls is Eq:
            return (f"{{ {self.term(t.lhs, tenv, yenv)} {s['eq']} "
                    f"{self.term(t.rhs, tenv, yenv)} }}")
        raise TypeError(f"not a type: {t!r}")

    # -- kinds ---------------------------------------------------------------

    def kind(self, k, tenv, yenv, level=TOP):
        s = self.sym
        cls = type(k)
        if cls is Star:
            return s["star"]
        if cls is PiTerm:
            x = self.bind(k.hint, Namespace.TERM, tenv, yenv)
            text = (f"{s['Pi']} {x} : {self.type(k.dom, tenv, yenv, HEAD)} . "
                    f"{self.kind(k.body, (x,) + tenv, yenv)}")
        elif cls is PiType:
            x = self.bind(k.hint, Namespace.TYPE, tenv, yenv)
            text = (f"{s['Pi']} {x} : {self.kind(k.kind, tenv, yenv, HEAD)} . "
                    f"{self.kind(k.body, tenv, (x,) + yenv)}")
        else:
            raise TypeError(f"not a kind: {k!r}")
        return self._paren(text, level >= HEAD)

    def any(self, e):
        cat = category(e)
        return getattr(self, cat)(e, (), ())


def _free_spellings(*exprs) -> set[str]:
    out = set()
    for e in exprs:
        out |= {n.text for n in fv(e)}
    return out


@deep
def show(e, ascii: bool = False) -> str:
    """Render any expression, pure terms included, in concrete syntax."""
    if isinstance(e, (lam.PVar, lam.PBound, lam.PLam, lam.PApp)):
        e = embed(e)
    return _Printer(_free_spellings(e), ascii).any(e)


@deep
def show_decl(d, ascii: bool = False) -> str:
    if isinstance(d, Define):
        p = _Printer(_free_spellings(d.classifier, d.body), ascii)
        return f"def {d.name.text} : {p.any(d.classifier)} = {p.any(d.body)} ."
    if isinstance(d, (CheckDirective, FailDirective)):
        p = _Printer(_free_spellings(d.term, d.type), ascii)
        word = "#check" if isinstance(d, CheckDirective) else "#fail"
        return f"{word} {p.any(d.term)} : {p.any(d.type)} ."
    if isinstance(d, ConvDirective):
        p = _Printer(_free_spellings(d.lhs, d.rhs), ascii)
        return f"#conv {p.any(d.lhs)} {p.sym['conv']} {p.any(d.rhs)} ."
    if isinstance(d, (NormDirective, SynthDirective)):
        p = _Printer(_free_spellings(d.term), ascii)
        word = "#norm" if isinstance(d, NormDirective) else "#synth"
        return f"{word} {p.any(d.term)} ."
    raise TypeError(f"not a declaration: {d!r}")


@deep
def show_file(decls, ascii: bool = False) -> str:
    return "".join(show_decl(d, ascii) + "\n" for d in decls)
