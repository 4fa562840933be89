"""Type-level beta reduction and conversion of types and kinds.

Types are compared after full type-level beta normalization; embedded terms
are compared by beta-eta equivalence of their erasures.  There is no eta at
the type level.
"""

from __future__ import annotations

import enum

from .erasure import erase
from .lam import DEFAULT_FUEL, Equiv, Fuel, as_fuel, beta_eta_equal
from .syntax import (AllTerm, AllType, AppTerm, AppType, Eq, Iota, Name,
                     Namespace, Pi, PiTerm, PiType, Star, TBVar, TVar,
                     TyLamTerm, TyLamType, close, open_name, open_term,
                     open_type)
from .stack import deep


class Conv(enum.Enum):
    CONVERTIBLE = "convertible"
    NOT_CONVERTIBLE = "not-convertible"
    EXHAUSTED = "exhausted"

    def __bool__(self):
        return self is Conv.CONVERTIBLE


class _OutOfFuel(Exception):
    pass


# Binder classes of types and kinds: the namespace each one binds and the
# field holding its classifier.
_TYPE_BINDERS = {
    AllType: (Namespace.TYPE, "kind"),
    AllTerm: (Namespace.TERM, "dom"),
    Pi: (Namespace.TERM, "dom"),
    Iota: (Namespace.TERM, "dom"),
    TyLamTerm: (Namespace.TERM, "dom"),
    TyLamType: (Namespace.TYPE, "kind"),
}
_KIND_BINDERS = {
    PiTerm: (Namespace.TERM, "dom"),
    PiType: (Namespace.TYPE, "kind"),
}


def _fresh(ns: Namespace, hint: str) -> Name:
    return Name.fresh(ns, hint)


def _charge(fuel: Fuel):
    if fuel.remaining <= 0:
        raise _OutOfFuel
    fuel.remaining -= 1


def _head_contract(t):
    """Contract ``t`` if it is itself a type-level beta redex."""
    if type(t) is AppTerm and type(t.fn) is TyLamTerm:
        return open_term(t.fn.body, t.arg)
    if type(t) is AppType and type(t.fn) is TyLamType:
        return open_type(t.fn.body, t.arg)
    return None


def _whnf(t, fuel: Fuel):
    if type(t) not in (AppTerm, AppType):
        return t
    fn = _whnf(t.fn, fuel)
    if fn is not t.fn:
        t = type(t)(fn, t.arg)
    r = _head_contract(t)
    if r is None:
        return t
    _charge(fuel)
    return _whnf(r, fuel)


@deep
def type_whnf(t, fuel: "Fuel | int" = DEFAULT_FUEL):
    """Reduce head redexes only.  Returns ``(type, exhausted)``."""
    try:
        return _whnf(t, as_fuel(fuel)), False
    except _OutOfFuel:
        return t, True


def _under(e, ns, body_attr, fn, *args):
    """Apply ``fn`` to the body of binder ``e`` opened at a fresh name."""
    x = _fresh(ns, e.hint)
    body = fn(open_name(getattr(e, body_attr), x), *args)
    return close(body, x)


def _norm_type(t, fuel):
    t = _whnf(t, fuel)
    cls = type(t)
    if cls in _TYPE_BINDERS:
        ns, cattr = _TYPE_BINDERS[cls]
        c = getattr(t, cattr)
        c2 = _norm_kind(c, fuel) if cattr == "kind" else _norm_type(c, fuel)
        body = _under(t, ns, "body", _norm_type, fuel)
        return cls(c2, body, t.hint) if (c2 is not c or body != t.body) else t
    if cls is AppTerm:
        fn = _norm_type(t.fn, fuel)
        return t if fn is t.fn else AppTerm(fn, t.arg)
    if cls is AppType:
        fn, arg = _norm_type(t.fn, fuel), _norm_type(t.arg, fuel)
        return t if fn is t.fn and arg is t.arg else AppType(fn, arg)
    return t


def _norm_kind(k, fuel):
    cls = type(k)
    if cls is Star:
        return k
    ns, cattr = _KIND_BINDERS[cls]
    c = getattr(k, cattr)
    c2 = _norm_kind(c, fuel) if cattr == "kind" else _norm_type(c, fuel)
    body = _under(k, ns, "body", _norm_kind, fuel)
    return cls(c2, body, k.hint) if (c2 is not c or body != k.body) else k


@deep
def type_beta_normalize(t, fuel: "Fuel | int" = DEFAULT_FUEL):
    """Full type-level beta normal form (embedded terms untouched).

    Returns ``(type, exhausted)``; on exhaustion the input is returned.
    """
    try:
        return _norm_type(t, as_fuel(fuel)), False
    except _OutOfFuel:
        return t, True


@deep
def kind_beta_normalize(k, fuel: "Fuel | int" = DEFAULT_FUEL):
    try:
        return _norm_kind(k, as_fuel(fuel)), False
    except _OutOfFuel:
        return k, True


def type_beta_step(t):
    """One leftmost-outermost type-level beta step, or ``None`` if normal."""
    r = _head_contract(t)
    if r is not None:
        return r
    cls = type(t)
    if cls in _TYPE_BINDERS or cls in _KIND_BINDERS:
        ns, cattr = (_TYPE_BINDERS.get(cls) or _KIND_BINDERS[cls])
        c = type_beta_step(getattr(t, cattr))
        if c is not None:
            return cls(c, t.body, t.hint)
        x = _fresh(ns, t.hint)
        b = type_beta_step(open_name(t.body, x))
        return None if b is None else cls(getattr(t, cattr), close(b, x), t.hint)
    if cls is AppTerm:
        fn = type_beta_step(t.fn)
        return None if fn is None else AppTerm(fn, t.arg)
    if cls is AppType:
        fn = type_beta_step(t.fn)
        if fn is not None:
            return AppType(fn, t.arg)
        arg = type_beta_step(t.arg)
        return None if arg is None else AppType(t.fn, arg)
    return None


# ---------------------------------------------------------------------------
# Structural comparison of normal forms


def _terms(a, b, fuel) -> Conv:
    r = beta_eta_equal(erase(a), erase(b), fuel)
    if r is Equiv.EQUAL:
        return Conv.CONVERTIBLE
    if r is Equiv.EXHAUSTED:
        return Conv.EXHAUSTED
    return Conv.NOT_CONVERTIBLE


def _all(results) -> Conv:
    exhausted = False
    for thunk in results:
        r = thunk()
        if r is Conv.NOT_CONVERTIBLE:
            return r
        exhausted |= r is Conv.EXHAUSTED
    return Conv.EXHAUSTED if exhausted else Conv.CONVERTIBLE


def _binders(a, b, table, body_cmp, fuel) -> Conv:
    ns, cattr = table[type(a)]
    ca, cb = getattr(a, cattr), getattr(b, cattr)
    x = _fresh(ns, a.hint)
    return _all([
        lambda: _kinds_t(ca, cb, fuel) if cattr == "kind" else _types_t(ca, cb, fuel),
        lambda: body_cmp(open_name(a.body, x), open_name(b.body, x), fuel),
    ])


def _types_t(a, b, fuel) -> Conv:
    if a == b:
        return Conv.CONVERTIBLE
    cls = type(a)
    if cls is not type(b):
        return Conv.NOT_CONVERTIBLE
    if cls is TVar or cls is TBVar:
        return Conv.NOT_CONVERTIBLE
    if cls in _TYPE_BINDERS:
        return _binders(a, b, _TYPE_BINDERS, _types_t, fuel)
    if cls is AppTerm:
        return _all([lambda: _types_t(a.fn, b.fn, fuel),
                     lambda: _terms(a.arg, b.arg, fuel)])
    if cls is AppType:
        return _all([lambda: _types_t(a.fn, b.fn, fuel),
                     lambda: _types_t(a.arg, b.arg, fuel)])
    if cls is Eq:
        return _all([lambda: _terms(a.lhs, b.lhs, fuel),
                     lambda: _terms(a.rhs, b.rhs, fuel)])
    raise TypeError(f"not a type: {a!r}")


def _kinds_t(a, b, fuel) -> Conv:
    if a == b:
        return Conv.CONVERTIBLE
    cls = type(a)
    if cls is not type(b):
        return Conv.NOT_CONVERTIBLE
    if cls is Star:
        return Conv.CONVERTIBLE
    return _binders(a, b, _KIND_BINDERS, _kinds_t, fuel)


@deep
def convert_types(a, b, fuel: "Fuel | int" = DEFAULT_FUEL) -> Conv:
    if a == b:
        return Conv.CONVERTIBLE
    fuel = as_fuel(fuel)
    try:
        na, nb = _norm_type(a, fuel), _norm_type(b, fuel)
    except _OutOfFuel:
        return Conv.EXHAUSTED
    return _types_t(na, nb, fuel)


@deep
def convert_kinds(a, b, fuel: "Fuel | int" = DEFAULT_FUEL) -> Conv:
    if a == b:
        return Conv.CONVERTIBLE
    fuel = as_fuel(fuel)
    try:
        na, nb = _norm_kind(a, fuel), _norm_kind(b, fuel)
    except _OutOfFuel:
        return Conv.EXHAUSTED
    return _kinds_t(na, nb, fuel)
