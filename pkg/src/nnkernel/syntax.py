"""Core term syntax.

Term variables and interval variables are both nameless (de Bruijn indices)
and live in separate binder namespaces: ``Var(0)`` is the innermost *term*
binder, while interval index 0 inside an :class:`IntervalElem` refers to the
innermost *interval* binder.  Binder names are kept only as printing hints.

``PApp`` and ``Ua`` carry optional endpoint annotations which the checker
fills in; evaluation uses them to compute a stuck path at ``0`` or ``1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .interval import IntervalElem

# Universe tags, in declaration order, with their fixed levels.
CATEGORIAL_TAGS: dict[str, int] = {
    "dravya": 1,
    "guna": 1,
    "karman": 1,
    "samanya": 2,
    "visesa": 1,
    "samavaya": 2,
    "abhava": 2,
}

# Nullary built-ins.  The value is the arity used by the surface desugarer for
# built-ins that take arguments (see BUILTIN_ARITY).
NULLARY = frozenset(
    {
        "Nat", "zero", "Empty", "Unit", "tt", "S1", "base", "loop",
        "Pratyasatti", "samyoga", "samavaya", "svarupa", "tadatmya",
        "nil",
    }
)
PRATYASATTI_CONS = ("samyoga", "samavaya", "svarupa", "tadatmya")


@dataclass(frozen=True)
class Term:
    span: Any = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var(Term):
    ix: int


@dataclass(frozen=True)
class Global(Term):
    name: str


@dataclass(frozen=True)
class Univ(Term):
    level: int
    tag: str | None = None


@dataclass(frozen=True)
class Pi(Term):
    name: str
    dom: Term
    cod: Term


@dataclass(frozen=True)
class Lam(Term):
    name: str
    body: Term
    dom: Term | None = None


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class Sigma(Term):
    name: str
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Pair(Term):
    fst: Term
    snd: Term


@dataclass(frozen=True)
class Fst(Term):
    arg: Term


@dataclass(frozen=True)
class Snd(Term):
    arg: Term


@dataclass(frozen=True)
class PathTy(Term):
    ty: Term
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class PLam(Term):
    name: str
    body: Term


@dataclass(frozen=True)
class PApp(Term):
    fn: Term
    r: IntervalElem
    lhs: Term | None = None
    rhs: Term | None = None


@dataclass(frozen=True)
class Transp(Term):
    line: Term
    r: IntervalElem
    arg: Term


@dataclass(frozen=True)
class Ua(Term):
    equiv: Term
    a: Term | None = None
    b: Term | None = None


@dataclass(frozen=True)
class Let(Term):
    name: str
    ty: Term
    val: Term
    body: Term


@dataclass(frozen=True)
class Ann(Term):
    term: Term
    ty: Term


@dataclass(frozen=True)
class Const(Term):
    name: str


@dataclass(frozen=True)
class Suc(Term):
    arg: Term


@dataclass(frozen=True)
class Fin(Term):
    bound: Term


@dataclass(frozen=True)
class FinLit(Term):
    k: int


@dataclass(frozen=True)
class FinCase(Term):
    motive: Term
    scrut: Term
    branches: tuple[Term, ...]


@dataclass(frozen=True)
class Absurd(Term):
    ty: Term
    arg: Term


@dataclass(frozen=True)
class ListTy(Term):
    elem: Term


@dataclass(frozen=True)
class Cons(Term):
    head: Term
    tail: Term


@dataclass(frozen=True)
class Parampara(Term):
    arg: Term


@dataclass(frozen=True)
class Abhava(Term):
    pratiyogin: Term
    anuyogin: Term
    mode: Term


@dataclass(frozen=True)
class Holds(Term):
    arg: Term


def nat_literal(n: int) -> Term:
    t: Term = Const("zero")
    for _ in range(n):
        t = Suc(t)
    return t


def mentions_ivar(t: Term, ix: int = 0) -> bool:
    """Does ``t`` mention interval variable ``ix`` (free)?"""
    match t:
        case PLam(_, body):
            return mentions_ivar(body, ix + 1)
        case PApp(fn, r, lhs, rhs):
            return (
                r.mentions(ix)
                or mentions_ivar(fn, ix)
                or (lhs is not None and mentions_ivar(lhs, ix))
                or (rhs is not None and mentions_ivar(rhs, ix))
            )
        case Transp(line, r, arg):
            return r.mentions(ix) or mentions_ivar(line, ix) or mentions_ivar(arg, ix)
        case FinCase(m, s, bs):
            return mentions_ivar(m, ix) or mentions_ivar(s, ix) or any(mentions_ivar(b, ix) for b in bs)
        case Var() | Global() | Univ() | Const() | FinLit():
            return False
    return any(
        isinstance(v, Term) and mentions_ivar(v, ix)
        for v in _children(t)
    )


def mentions_var(t: Term, ix: int = 0) -> bool:
    """Does ``t`` mention term variable ``ix`` (free)?"""
    match t:
        case Var(j):
            return j == ix
        case Pi(_, a, b) | Sigma(_, a, b):
            return mentions_var(a, ix) or mentions_var(b, ix + 1)
        case Lam(_, body, dom):
            return mentions_var(body, ix + 1) or (dom is not None and mentions_var(dom, ix))
        case Let(_, ty, val, body):
            return mentions_var(ty, ix) or mentions_var(val, ix) or mentions_var(body, ix + 1)
        case FinCase(m, s, bs):
            return mentions_var(m, ix) or mentions_var(s, ix) or any(mentions_var(b, ix) for b in bs)
        case Global() | Univ() | Const() | FinLit():
            return False
    return any(isinstance(v, Term) and mentions_var(v, ix) for v in _children(t))


def _children(t: Term):
    for name in t.__dataclass_fields__:
        if name == "span":
            continue
        yield getattr(t, name)
