"""Shared generators for the test suite."""

import random
from functools import lru_cache
from pathlib import Path

from cdle.lam import PApp, PBound, PLam, PVar
from cdle.syntax import (STAR, AllTerm, AllType, App, AppTerm, AppType, Beta,
                         BVar, Chi, Delta, Eq, ErasedApp, Iota, Lam, Namespace,
                         Pair, Phi, Pi, PiTerm, PiType, Proj1, Proj2, Rho,
                         TBVar, TLam, TVar, TyLamTerm, TyLamType, TypeApp, Var,
                         term_name, type_name)

ROOT = Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"
CORPUS_FILES = sorted(CORPUS.glob("*.ced"))


@lru_cache(maxsize=None)
def closed_terms(size, depth=0):
    """All pure terms of exactly ``size`` nodes with ``depth`` enclosing binders."""
    if size == 1:
        return tuple(PBound(i) for i in range(depth))
    out = [PLam(b, "x") for b in closed_terms(size - 1, depth + 1)]
    for left in range(1, size - 1):
        for f in closed_terms(left, depth):
            for a in closed_terms(size - 1 - left, depth):
                out.append(PApp(f, a))
    return tuple(out)


def closed_terms_upto(size):
    return [p for n in range(1, size + 1) for p in closed_terms(n)]


# -- random well-scoped annotated syntax -------------------------------------

FREE_TERMS = {s: term_name(s) for s in ("a", "b", "f", "g")}
FREE_TYPES = {s: type_name(s) for s in ("A", "B", "F")}
GLOBALS = {**FREE_TERMS, **FREE_TYPES}
TERM_HINTS = ["x", "y", "z", "a", "f", "lam"]
TYPE_HINTS = ["X", "Y", "A", "Pi"]


class Gen:
    def __init__(self, seed):
        self.r = random.Random(seed)

    def pick(self, xs):
        return self.r.choice(xs)

    def term(self, n, td, yd):
        r = self.r
        if n <= 0 or r.random() < 0.2:
            if td and r.random() < 0.6:
                return BVar(r.randrange(td))
            return Var(self.pick(list(FREE_TERMS.values())))
        k = r.randrange(14)
        h = self.pick(TERM_HINTS)
        if k == 0:
            return Lam(self.term(n - 1, td + 1, yd), h)
        if k == 1:
            if r.random() < 0.5:
                return TLam(Namespace.TERM, self.term(n - 1, td + 1, yd), h)
            return TLam(Namespace.TYPE, self.term(n - 1, td, yd + 1), self.pick(TYPE_HINTS))
        if k in (2, 3):
            return App(self.term(n // 2, td, yd), self.term(n // 2, td, yd))
        if k == 4:
            return ErasedApp(self.term(n // 2, td, yd), self.term(n // 2, td, yd))
        if k == 5:
            return TypeApp(self.term(n // 2, td, yd), self.type(n // 2, td, yd))
        if k == 6:
            return Pair(self.term(n // 2, td, yd), self.term(n // 2, td, yd))
        if k == 7:
            return Proj1(self.term(n - 1, td, yd))
        if k == 8:
            return Proj2(self.term(n - 1, td, yd))
        if k == 9:
            return Beta(self.term(n - 1, td, yd))
        if k == 10:
            return Delta(self.term(n - 1, td, yd))
        if k == 11:
            return Rho(self.term(n // 2, td, yd), self.term(n // 2, td, yd))
        if k == 12:
            return Chi(self.type(n // 2, td, yd), self.term(n // 2, td, yd))
        return Phi(self.term(n // 3, td, yd), self.term(n // 3, td, yd), self.term(n // 3, td, yd))

    def type(self, n, td, yd):
        r = self.r
        if n <= 0 or r.random() < 0.2:
            if yd and r.random() < 0.6:
                return TBVar(r.randrange(yd))
            return TVar(self.pick(list(FREE_TYPES.values())))
        k = r.randrange(10)
        th, yh = self.pick(TERM_HINTS), self.pick(TYPE_HINTS)
        if k == 0:
            return AllType(self.kind(n // 2, td, yd), self.type(n // 2, td, yd + 1), yh)
        if k == 1:
            return AllTerm(self.type(n // 2, td, yd), self.type(n // 2, td + 1, yd), th)
        if k == 2:
            return Pi(self.type(n // 2, td, yd), self.type(n // 2, td + 1, yd), th)
        if k == 3:
            return Iota(self.type(n // 2, td, yd), self.type(n // 2, td + 1, yd), th)
        if k == 4:
            return TyLamTerm(self.type(n // 2, td, yd), self.type(n // 2, td + 1, yd), th)
        if k == 5:
            return TyLamType(self.kind(n // 2, td, yd), self.type(n // 2, td, yd + 1), yh)
        if k == 6:
            return AppTerm(self.type(n // 2, td, yd), self.term(n // 2, td, yd))
        if k == 7:
            return AppType(self.type(n // 2, td, yd), self.type(n // 2, td, yd))
        return Eq(self.term(n // 2, td, yd), self.term(n // 2, td, yd))

    def kind(self, n, td, yd):
        r = self.r
        if n <= 0 or r.random() < 0.4:
            return STAR
        if r.random() < 0.5:
            return PiTerm(self.type(n // 2, td, yd), self.kind(n // 2, td + 1, yd),
                          self.pick(TERM_HINTS))
        return PiType(self.kind(n // 2, td, yd), self.kind(n // 2, td, yd + 1),
                      self.pick(TYPE_HINTS))

    def any(self, n):
        return getattr(self, self.pick(["term", "term", "type", "kind"]))(n, 0, 0)


def random_pure(r, n, depth=0, free=("u", "v")):
    """A random pure term over de Bruijn indices and a few free names."""
    if n <= 0 or r.random() < 0.25:
        if depth and r.random() < 0.8:
            return PBound(r.randrange(depth))
        return PVar(FREE_TERMS["a"] if r.random() < 0.5 else FREE_TERMS["b"])
    if r.random() < 0.45:
        return PLam(random_pure(r, n - 1, depth + 1), "x")
    return PApp(random_pure(r, n // 2, depth), random_pure(r, n // 2, depth))


# Filled by test_acceptance and printed in the terminal summary.
ACCEPTANCE_LINES = []
