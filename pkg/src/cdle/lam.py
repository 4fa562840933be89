"""Pure untyped lambda terms and fuel-bounded beta-eta reduction.

Terms use de Bruijn indices for bound variables and :class:`~cdle.syntax.Name`
for free ones.  Binder spellings ride along as hints that are ignored by
equality, so ``==`` is alpha-equivalence.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .syntax import Name
from .stack import deep


@dataclass(frozen=True, slots=True)
class PVar:
    name: Name


@dataclass(frozen=True, slots=True)
class PBound:
    index: int


@dataclass(frozen=True, slots=True)
class PLam:
    body: "PureTerm"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True, slots=True)
class PApp:
    fn: "PureTerm"
    arg: "PureTerm"


PureTerm = Union[PVar, PBound, PLam, PApp]

DEFAULT_FUEL = 100_000


class Fuel:
    """A step budget shared by every reduction charged to one judgment."""

    __slots__ = ("initial", "remaining")

    def __init__(self, remaining: int = DEFAULT_FUEL):
        if remaining < 0:
            raise ValueError("fuel must be non-negative")
        self.initial = remaining
        self.remaining = remaining

    @property
    def used(self) -> int:
        return self.initial - self.remaining

    def __repr__(self):
        return f"Fuel({self.remaining}/{self.initial})"


def as_fuel(fuel: "Fuel | int") -> Fuel:
    return fuel if isinstance(fuel, Fuel) else Fuel(fuel)


# ---------------------------------------------------------------------------
# De Bruijn plumbing


def shift(p: PureTerm, by: int, cutoff: int = 0) -> PureTerm:
    t = type(p)
    if t is PBound:
        return PBound(p.index + by) if p.index >= cutoff else p
    if t is PApp:
        fn, arg = shift(p.fn, by, cutoff), shift(p.arg, by, cutoff)
        return p if fn is p.fn and arg is p.arg else PApp(fn, arg)
    if t is PLam:
        body = shift(p.body, by, cutoff + 1)
        return p if body is p.body else PLam(body, p.hint)
    return p


def _instantiate(body: PureTerm, s: PureTerm, depth: int) -> PureTerm:
    # body[depth := s shifted by depth]; indices above depth drop by one
    t = type(body)
    if t is PBound:
        i = body.index
        if i == depth:
            return shift(s, depth) if depth else s
        if i > depth:
            return PBound(i - 1)
        return body
    if t is PApp:
        fn = _instantiate(body.fn, s, depth)
        arg = _instantiate(body.arg, s, depth)
        return body if fn is body.fn and arg is body.arg else PApp(fn, arg)
    if t is PLam:
        b = _instantiate(body.body, s, depth + 1)
        return body if b is body.body else PLam(b, body.hint)
    return body


def beta(body: PureTerm, arg: PureTerm) -> PureTerm:
    """Contract ``(λ. body) arg``."""
    return _instantiate(body, arg, 0)


def has_free_index(p: PureTerm, index: int) -> bool:
    t = type(p)
    if t is PBound:
        return p.index == index
    if t is PApp:
        return has_free_index(p.fn, index) or has_free_index(p.arg, index)
    if t is PLam:
        return has_free_index(p.body, index + 1)
    return False


def free_names(p: PureTerm) -> set[Name]:
    out: set[Name] = set()
    stack = [p]
    while stack:
        q = stack.pop()
        t = type(q)
        if t is PVar:
            out.add(q.name)
        elif t is PApp:
            stack.append(q.fn)
            stack.append(q.arg)
        elif t is PLam:
            stack.append(q.body)
    return out


def is_closed(p: PureTerm, depth: int = 0) -> bool:
    t = type(p)
    if t is PBound:
        return p.index < depth
    if t is PApp:
        return is_closed(p.fn, depth) and is_closed(p.arg, depth)
    if t is PLam:
        return is_closed(p.body, depth + 1)
    return False


def size(p: PureTerm) -> int:
    t = type(p)
    if t is PApp:
        return 1 + size(p.fn) + size(p.arg)
    if t is PLam:
        return 1 + size(p.body)
    return 1


def _eta_redex(lam: PLam) -> bool:
    b = lam.body
    return (type(b) is PApp and type(b.arg) is PBound and b.arg.index == 0
            and not has_free_index(b.fn, 0))


def _head_redex(p: PureTerm) -> bool:
    while type(p) is PApp:
        if type(p.fn) is PLam:
            return True
        p = p.fn
    return False


# ---------------------------------------------------------------------------
# Reduction


def step(p: PureTerm) -> Optional[PureTerm]:
    """One leftmost-outermost beta or eta step, or ``None`` if ``p`` is normal.

    At an abstraction that is an eta-redex, eta fires unless the body still
    has a beta-redex along its head spine.
    """
    t = type(p)
    if t is PApp:
        fn = p.fn
        if type(fn) is PLam:
            return beta(fn.body, p.arg)
        r = step(fn)
        if r is not None:
            return PApp(r, p.arg)
        r = step(p.arg)
        return None if r is None else PApp(fn, r)
    if t is PLam:
        if _eta_redex(p) and not _head_redex(p.body):
            return shift(p.body.fn, -1)
        r = step(p.body)
        return None if r is None else PLam(r, p.hint)
    return None


@dataclass(frozen=True)
class Normal:
    term: PureTerm
    steps: int


@dataclass(frozen=True)
class Exhausted:
    term: PureTerm
    steps: int


NormResult = Union[Normal, Exhausted]


@deep
def normalize(p: PureTerm, fuel: "Fuel | int" = DEFAULT_FUEL) -> NormResult:
    fuel = as_fuel(fuel)
    steps = 0
    while True:
        q = step(p)
        if q is None:
            return Normal(p, steps)
        if fuel.remaining <= 0:
            return Exhausted(p, steps)
        fuel.remaining -= 1
        steps += 1
        p = q


class Equiv(enum.Enum):
    EQUAL = "equal"
    NOT_EQUAL = "not-equal"
    EXHAUSTED = "exhausted"


@deep
def beta_eta_equal(p: PureTerm, q: PureTerm, fuel: "Fuel | int" = DEFAULT_FUEL) -> Equiv:
    """Decide ``p =βη q`` within ``fuel`` reduction steps shared by both sides.

    Alpha-equivalent inputs are equal without reducing; otherwise both sides
    are normalized and the normal forms compared.
    """
    if p == q:
        return Equiv.EQUAL
    fuel = as_fuel(fuel)
    a = normalize(p, fuel)
    if isinstance(a, Exhausted):
        return Equiv.EXHAUSTED
    b = normalize(q, fuel)
    if isinstance(b, Exhausted):
        return Equiv.EXHAUSTED
    return Equiv.EQUAL if a.term == b.term else Equiv.NOT_EQUAL


# ---------------------------------------------------------------------------
# Brute-force joinability oracle.  Deliberately shares nothing with ``step``:
# it uses the textbook shift/subst formulation and contracts every redex.


def _oracle_subst(p: PureTerm, j: int, s: PureTerm) -> PureTerm:
    t = type(p)
    if t is PBound:
        return s if p.index == j else p
    if t is PApp:
        return PApp(_oracle_subst(p.fn, j, s), _oracle_subst(p.arg, j, s))
    if t is PLam:
        return PLam(_oracle_subst(p.body, j + 1, shift(s, 1)), p.hint)
    return p


def _oracle_mentions(p: PureTerm, i: int) -> bool:
    if type(p) is PBound:
        return p.index == i
    if type(p) is PApp:
        return _oracle_mentions(p.fn, i) or _oracle_mentions(p.arg, i)
    if type(p) is PLam:
        return _oracle_mentions(p.body, i + 1)
    return False


def one_step_reducts(p: PureTerm) -> list[PureTerm]:
    """Every term reachable from ``p`` by contracting exactly one redex."""
    out = []
    t = type(p)
    if t is PApp:
        if type(p.fn) is PLam:
            contracted = _oracle_subst(p.fn.body, 0, shift(p.arg, 1))
            out.append(shift(contracted, -1))
        out.extend(PApp(r, p.arg) for r in one_step_reducts(p.fn))
        out.extend(PApp(p.fn, r) for r in one_step_reducts(p.arg))
    elif t is PLam:
        b = p.body
        if (type(b) is PApp and type(b.arg) is PBound and b.arg.index == 0
                and not _oracle_mentions(b.fn, 0)):
            out.append(shift(b.fn, -1))
        out.extend(PLam(r, p.hint) for r in one_step_reducts(b))
    return out


def reducts(p: PureTerm, depth: int) -> tuple[set[PureTerm], bool]:
    """All reducts of ``p`` within ``depth`` steps, and whether that set is closed."""
    seen = {p}
    frontier = [p]
    for _ in range(depth):
        nxt = []
        for q in frontier:
            for r in one_step_reducts(q):
                if r not in seen:
                    seen.add(r)
                    nxt.append(r)
        frontier = nxt
        if not frontier:
            return seen, True
    closed = all(r in seen for q in frontier for r in one_step_reducts(q))
    return seen, closed


@deep
def oracle_equal(p: PureTerm, q: PureTerm, depth: int = 4) -> Optional[bool]:
    """True if ``p`` and ``q`` share a reduct within ``depth`` steps, False if
    both reduct sets are closed under reduction, each holds a normal form, and
    they are disjoint; otherwise ``None``."""
    rp, closed_p = reducts(p, depth)
    rq, closed_q = reducts(q, depth)
    if rp & rq:
        return True
    if closed_p and closed_q and _has_normal(rp) and _has_normal(rq):
        return False
    return None


def _has_normal(terms) -> bool:
    return any(not one_step_reducts(r) for r in terms)
