"""Abstract syntax of annotated terms and of their classifiers.

Binding is locally nameless: bound variables are de Bruijn indices, kept in
two separate index spaces (term binders and type binders), while free
variables are :class:`Name` objects.  Binder spellings are stored as hints
that never take part in equality, so alpha-equivalence is plain ``==``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Iterable, Union


class Namespace(enum.Enum):
    TERM = "term"
    TYPE = "type"


_ids = itertools.count(1)


@dataclass(frozen=True)
class Name:
    ns: Namespace
    id: int
    text: str = field(compare=False)

    @classmethod
    def fresh(cls, ns: Namespace, text: str) -> "Name":
        return cls(ns, next(_ids), text)

    @property
    def is_term(self) -> bool:
        return self.ns is Namespace.TERM

    def __str__(self):
        return self.text

    def __repr__(self):
        return f"{self.text}#{self.id}"


def term_name(text: str) -> Name:
    return Name.fresh(Namespace.TERM, text)


def type_name(text: str) -> Name:
    return Name.fresh(Namespace.TYPE, text)


def namespace_of(spelling: str) -> Namespace:
    """Uppercase spellings are type variables, everything else term variables."""
    return Namespace.TYPE if spelling[:1].isupper() else Namespace.TERM


def _hint():
    return field(default="x", compare=False)


# ---------------------------------------------------------------------------
# Annotated terms


@dataclass(frozen=True)
class Var:
    name: Name


@dataclass(frozen=True)
class BVar:
    index: int


@dataclass(frozen=True)
class Lam:
    body: "AnnTerm"
    hint: str = _hint()


@dataclass(frozen=True)
class TLam:
    """Erased abstraction over a term (``Λ x``) or a type (``Λ X``)."""

    ns: Namespace
    body: "AnnTerm"
    hint: str = _hint()


@dataclass(frozen=True)
class App:
    fn: "AnnTerm"
    arg: "AnnTerm"


@dataclass(frozen=True)
class ErasedApp:
    fn: "AnnTerm"
    arg: "AnnTerm"


@dataclass(frozen=True)
class TypeApp:
    fn: "AnnTerm"
    arg: "TypeExpr"


@dataclass(frozen=True)
class Pair:
    left: "AnnTerm"
    right: "AnnTerm"


@dataclass(frozen=True)
class Proj1:
    term: "AnnTerm"


@dataclass(frozen=True)
class Proj2:
    term: "AnnTerm"


@dataclass(frozen=True)
class Beta:
    witness: "AnnTerm"


@dataclass(frozen=True)
class Delta:
    term: "AnnTerm"


@dataclass(frozen=True)
class Rho:
    eq: "AnnTerm"
    body: "AnnTerm"


@dataclass(frozen=True)
class Chi:
    type: "TypeExpr"
    term: "AnnTerm"


@dataclass(frozen=True)
class Phi:
    eq: "AnnTerm"
    typed: "AnnTerm"
    target: "AnnTerm"


AnnTerm = Union[Var, BVar, Lam, TLam, App, ErasedApp, TypeApp, Pair, Proj1,
                Proj2, Beta, Delta, Rho, Chi, Phi]

# ---------------------------------------------------------------------------
# Types


@dataclass(frozen=True)
class TVar:
    name: Name


@dataclass(frozen=True)
class TBVar:
    index: int


@dataclass(frozen=True)
class AllType:
    kind: "KindExpr"
    body: "TypeExpr"
    hint: str = _hint()


@dataclass(frozen=True)
class AllTerm:
    dom: "TypeExpr"
    body: "TypeExpr"
    hint: str = _hint()


@dataclass(frozen=True)
class Pi:
    dom: "TypeExpr"
    body: "TypeExpr"
    hint: str = _hint()


@dataclass(frozen=True)
class Iota:
    dom: "TypeExpr"
    body: "TypeExpr"
    hint: str = _hint()


@dataclass(frozen=True)
class TyLamTerm:
    dom: "TypeExpr"
    body: "TypeExpr"
    hint: str = _hint()


@dataclass(frozen=True)
class TyLamType:
    kind: "KindExpr"
    body: "TypeExpr"
    hint: str = _hint()


@dataclass(frozen=True)
class AppTerm:
    fn: "TypeExpr"
    arg: AnnTerm


@dataclass(frozen=True)
class AppType:
    fn: "TypeExpr"
    arg: "TypeExpr"


@dataclass(frozen=True)
class Eq:
    lhs: AnnTerm
    rhs: AnnTerm


TypeExpr = Union[TVar, TBVar, AllType, AllTerm, Pi, Iota, TyLamTerm, TyLamType,
                 AppTerm, AppType, Eq]

# ---------------------------------------------------------------------------
# Kinds


@dataclass(frozen=True)
class Star:
    pass


STAR = Star()


@dataclass(frozen=True)
class PiTerm:
    dom: TypeExpr
    body: "KindExpr"
    hint: str = _hint()


@dataclass(frozen=True)
class PiType:
    kind: "KindExpr"
    body: "KindExpr"
    hint: str = _hint()


KindExpr = Union[Star, PiTerm, PiType]
Expr = Union[AnnTerm, TypeExpr, KindExpr]

TERM_CLASSES = (Var, BVar, Lam, TLam, App, ErasedApp, TypeApp, Pair, Proj1,
                Proj2, Beta, Delta, Rho, Chi, Phi)
TYPE_CLASSES = (TVar, TBVar, AllType, AllTerm, Pi, Iota, TyLamTerm, TyLamType,
                AppTerm, AppType, Eq)
KIND_CLASSES = (Star, PiTerm, PiType)

# Per class: the expression-valued fields, each with the number of term and
# type binders crossed on the way into it.
_T, _Y, _0 = (1, 0), (0, 1), (0, 0)
_SHAPES: dict[type, tuple[tuple[str, tuple[int, int]], ...]] = {
    Lam: (("body", _T),),
    App: (("fn", _0), ("arg", _0)),
    ErasedApp: (("fn", _0), ("arg", _0)),
    TypeApp: (("fn", _0), ("arg", _0)),
    Pair: (("left", _0), ("right", _0)),
    Proj1: (("term", _0),),
    Proj2: (("term", _0),),
    Beta: (("witness", _0),),
    Delta: (("term", _0),),
    Rho: (("eq", _0), ("body", _0)),
    Chi: (("type", _0), ("term", _0)),
    Phi: (("eq", _0), ("typed", _0), ("target", _0)),
    AllType: (("kind", _0), ("body", _Y)),
    AllTerm: (("dom", _0), ("body", _T)),
    Pi: (("dom", _0), ("body", _T)),
    Iota: (("dom", _0), ("body", _T)),
    TyLamTerm: (("dom", _0), ("body", _T)),
    TyLamType: (("kind", _0), ("body", _Y)),
    AppTerm: (("fn", _0), ("arg", _0)),
    AppType: (("fn", _0), ("arg", _0)),
    Eq: (("lhs", _0), ("rhs", _0)),
    PiTerm: (("dom", _0), ("body", _T)),
    PiType: (("kind", _0), ("body", _Y)),
}
LEAVES = (Var, BVar, TVar, TBVar, Star)


def fields_of(e):
    """``(attr, (term binders, type binders))`` for each subexpression field."""
    if type(e) is TLam:
        return (("body", _T if e.ns is Namespace.TERM else _Y),)
    return _SHAPES[type(e)]


def children(e) -> list[tuple[object, tuple[int, int]]]:
    """Immediate subexpressions with the binder depth crossed into each."""
    if isinstance(e, LEAVES):
        return []
    return [(getattr(e, attr), d) for attr, d in fields_of(e)]


Leaf = Callable[[object, int, int], object]


def transform(e, leaf: Leaf, td: int = 0, yd: int = 0):
    """Rebuild ``e`` bottom-up, replacing each variable leaf by ``leaf(v, td, yd)``.

    ``td``/``yd`` count the term/type binders enclosing the leaf.  Nodes whose
    children are unchanged are returned as-is, so shared subtrees keep their
    identity.
    """
    if isinstance(e, LEAVES):
        return leaf(e, td, yd)
    changes = {}
    for attr, (dt, dy) in fields_of(e):
        old = getattr(e, attr)
        new = transform(old, leaf, td + dt, yd + dy)
        if new is not old:
            changes[attr] = new
    return replace(e, **changes) if changes else e


# ---------------------------------------------------------------------------
# Free variables, opening, closing, substitution


def fv(e) -> set[Name]:
    out: set[Name] = set()
    _fv(e, out)
    return out


def _fv(e, out):
    t = type(e)
    if t is Var or t is TVar:
        out.add(e.name)
    elif not isinstance(e, LEAVES):
        for attr, _ in fields_of(e):
            _fv(getattr(e, attr), out)


def is_locally_closed(e) -> bool:
    ok = True

    def leaf(v, td, yd):
        nonlocal ok
        if (type(v) is BVar and v.index >= td) or (type(v) is TBVar and v.index >= yd):
            ok = False
        return v

    transform(e, leaf)
    return ok


def open_term(body, t: AnnTerm):
    """Instantiate the outermost term binder of ``body`` with ``t``."""

    def leaf(v, td, yd):
        if type(v) is BVar and v.index == td:
            return t
        return v

    return transform(body, leaf)


def open_type(body, s: TypeExpr):
    def leaf(v, td, yd):
        if type(v) is TBVar and v.index == yd:
            return s
        return v

    return transform(body, leaf)


def open_name(body, name: Name):
    if name.is_term:
        return open_term(body, Var(name))
    return open_type(body, TVar(name))


def close(e, name: Name):
    """Abstract the free ``name`` in ``e`` into the outermost bound index."""
    if name.is_term:
        def leaf(v, td, yd):
            return BVar(td) if type(v) is Var and v.name == name else v
    else:
        def leaf(v, td, yd):
            return TBVar(yd) if type(v) is TVar and v.name == name else v
    return transform(e, leaf)


def subst_term(x: Name, t: AnnTerm, target):
    """``[t/x]target``; ``t`` must be locally closed, so capture cannot occur."""

    def leaf(v, td, yd):
        return t if type(v) is Var and v.name == x else v

    return transform(target, leaf)


def subst_type(x: Name, s: TypeExpr, target):
    def leaf(v, td, yd):
        return s if type(v) is TVar and v.name == x else v

    return transform(target, leaf)


def alpha_eq(a, b) -> bool:
    return a == b


def category(e) -> str:
    if isinstance(e, TERM_CLASSES):
        return "term"
    if isinstance(e, TYPE_CLASSES):
        return "type"
    if isinstance(e, KIND_CLASSES):
        return "kind"
    raise TypeError(f"not an expression: {e!r}")


# Convenience builders taking names instead of indices.

def lam(x: Name, body: AnnTerm) -> Lam:
    return Lam(close(body, x), x.text)


def tlam(x: Name, body: AnnTerm) -> TLam:
    return TLam(x.ns, close(body, x), x.text)


def _binder(cls):
    def build(x: Name, classifier, body):
        return cls(classifier, close(body, x), x.text)
    build.__name__ = cls.__name__.lower()
    return build


all_type = _binder(AllType)
all_term = _binder(AllTerm)
pi = _binder(Pi)
iota = _binder(Iota)
tylam_term = _binder(TyLamTerm)
tylam_type = _binder(TyLamType)
pi_term = _binder(PiTerm)
pi_type = _binder(PiType)


# ---------------------------------------------------------------------------
# Contexts


class UnboundVariable(LookupError):
    def __init__(self, name: Name):
        super().__init__(f"unbound variable {name.text}")
        self.name = name


@dataclass(frozen=True)
class TermDecl:
    name: Name
    type: TypeExpr


@dataclass(frozen=True)
class TypeDecl:
    name: Name
    kind: KindExpr


class Context:
    """An ordered telescope of declarations; extending returns a new context."""

    __slots__ = ("entries", "_index")

    def __init__(self, entries: Iterable[TermDecl | TypeDecl] = ()):
        self.entries = tuple(entries)
        self._index = {d.name: d for d in self.entries}

    def extend(self, name: Name, classifier) -> "Context":
        if name in self._index:
            raise ValueError(f"{name!r} already declared")
        decl = TermDecl(name, classifier) if name.is_term else TypeDecl(name, classifier)
        ctx = Context.__new__(Context)
        ctx.entries = self.entries + (decl,)
        ctx._index = {**self._index, name: decl}
        return ctx

    def lookup(self, name: Name):
        decl = self._index.get(name)
        if decl is None:
            raise UnboundVariable(name)
        return decl.type if isinstance(decl, TermDecl) else decl.kind

    def dom(self) -> frozenset[Name]:
        return frozenset(self._index)

    def __contains__(self, name: Name) -> bool:
        return name in self._index

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"Context({list(self.entries)!r})"


def ctx_lookup(ctx: Context, name: Name):
    return ctx.lookup(name)


def scope_errors(ctx: Context) -> list[Name]:
    """Names mentioned by a classifier before they are declared."""
    seen: set[Name] = set()
    bad = []
    for d in ctx.entries:
        classifier = d.type if isinstance(d, TermDecl) else d.kind
        bad.extend(n for n in fv(classifier) if n not in seen)
        seen.add(d.name)
    return bad
