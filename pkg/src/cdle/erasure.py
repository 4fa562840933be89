"""Erasure of annotated terms to pure lambda terms, and the reverse embedding."""

from __future__ import annotations

from .lam import PApp, PBound, PLam, PureTerm, PVar
from .syntax import (App, AnnTerm, Beta, BVar, Chi, Delta, ErasedApp, Lam,
                     Namespace, Pair, Phi, Proj1, Proj2, Rho, TLam, TypeApp,
                     Name, Var)
from .stack import deep

# Each enclosing term binder is either kept (a real λ, marked ``None``) or
# erased, in which case its occurrences surface as a free name.
_KEPT = None


@deep
def erase(t: AnnTerm) -> PureTerm:
    return _erase(t, ())


def _erase(t, env):
    cls = type(t)
    if cls is Var:
        return PVar(t.name)
    if cls is BVar:
        if t.index >= len(env):
            # loose index of an open term: keep pointing past the local binders
            kept = sum(1 for e in env if e is _KEPT)
            return PBound(kept + t.index - len(env))
        entry = env[t.index]
        if entry is not _KEPT:
            return PVar(entry)
        return PBound(sum(1 for e in env[:t.index] if e is _KEPT))
    if cls is Lam:
        return PLam(_erase(t.body, (_KEPT,) + env), t.hint)
    if cls is App:
        return PApp(_erase(t.fn, env), _erase(t.arg, env))
    if cls is TLam:
        if t.ns is Namespace.TYPE:
            return _erase(t.body, env)
        # an erased binder that still occurs in the erasure becomes free; the
        # name depends only on binder depth so erasure stays deterministic
        escaped = Name(Namespace.TERM, -1 - len(env), t.hint)
        return _erase(t.body, (escaped,) + env)
    if cls in (TypeApp, ErasedApp):
        return _erase(t.fn, env)
    if cls is Pair:
        return _erase(t.left, env)
    if cls in (Proj1, Proj2, Delta):
        return _erase(t.term, env)
    if cls is Beta:
        return _erase(t.witness, env)
    if cls is Rho:
        return _erase(t.body, env)
    if cls is Chi:
        return _erase(t.term, env)
    if cls is Phi:
        return _erase(t.target, env)
    raise TypeError(f"not an annotated term: {t!r}")


@deep
def embed(p: PureTerm) -> AnnTerm:
    cls = type(p)
    if cls is PVar:
        return Var(p.name)
    if cls is PBound:
        return BVar(p.index)
    if cls is PLam:
        return Lam(embed(p.body), p.hint)
    return App(embed(p.fn), embed(p.arg))
