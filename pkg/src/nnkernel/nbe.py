"""Semantic domain, evaluation, read-back and conversion.

Values use de Bruijn *levels* for both term and interval variables.  The
evaluator contracts the built-in reductions:

* ``R1`` path application of a path abstraction;
* ``R2`` a stuck path applied at ``0``/``1`` returns its recorded endpoint;
* ``R3`` transport along a line that does not mention its variable is the identity;
* ``R4`` transport along ``ua e`` from ``0`` applies the function part of ``e``;
* ``R5`` ``Abhava (Abhava P L s) L s`` collapses to ``P``.

Two further contractions are needed by the language's built-ins: ``fin-case``
on a literal picks its branch, and ``ua`` of an equivalence whose function is
the identity between convertible types is the constant line (``UA_ID``).

Evaluation is pure apart from a per-session step budget, kept in a context
variable so that concurrent sessions do not share it.
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Iterator

from .interval import IntervalElem
from .syntax import (
    Abhava, Absurd, Ann, App, Cons, Const, Fin, FinCase, FinLit, Fst, Global,
    Holds, Lam, Let, ListTy, PApp, Pair, Parampara, PathTy, Pi, PLam, Sigma,
    Snd, Suc, Term, Transp, Ua, Univ, Var, mentions_ivar,
)

DEFAULT_FUEL = 10**7
RULES = ("R1", "R2", "R3", "R4", "R5", "FIN", "UA_ID")

# Levels at or above this are reserved for probes made during evaluation.
_PROBE = 1 << 40


class FuelExhausted(Exception):
    pass


@dataclass
class Budget:
    fuel: int = DEFAULT_FUEL
    disabled: frozenset = frozenset()
    used: int = 0


_UNBOUNDED = Budget(fuel=-1)
_BUDGET: contextvars.ContextVar[Budget] = contextvars.ContextVar("nn_budget", default=_UNBOUNDED)


@contextmanager
def budget(fuel: int = DEFAULT_FUEL, disabled: frozenset | set = frozenset()) -> Iterator[Budget]:
    """Run a block of evaluation with its own step budget and rule switches."""
    b = Budget(fuel=fuel, disabled=frozenset(disabled))
    token = _BUDGET.set(b)
    try:
        yield b
    finally:
        _BUDGET.reset(token)


# -- globals -------------------------------------------------------------------

@dataclass
class GlobalEntry:
    name: str
    type: "Value"
    type_term: Term
    value: "Value | None" = None  # None for postulates
    term: Term | None = None


class Globals:
    """Name table for postulates and definitions; layered over a parent."""

    def __init__(self, parent: "Globals | None" = None):
        self.parent = parent
        self.entries: dict[str, GlobalEntry] = {}

    def lookup(self, name: str) -> GlobalEntry | None:
        g: Globals | None = self
        while g is not None:
            e = g.entries.get(name)
            if e is not None:
                return e
            g = g.parent
        return None

    def __contains__(self, name: str) -> bool:
        return self.lookup(name) is not None

    def define(self, entry: GlobalEntry) -> None:
        self.entries[entry.name] = entry

    def remove(self, name: str) -> None:
        self.entries.pop(name, None)

    def names(self) -> list[str]:
        out = [] if self.parent is None else self.parent.names()
        return out + list(self.entries)


# -- values --------------------------------------------------------------------

@dataclass(frozen=True)
class Env:
    glob: Globals
    vals: tuple = ()
    ivals: tuple = ()

    def extend(self, v: "Value") -> "Env":
        return Env(self.glob, self.vals + (v,), self.ivals)

    def extend_i(self, r: IntervalElem) -> "Env":
        return Env(self.glob, self.vals, self.ivals + (r,))


@dataclass(frozen=True)
class Closure:
    env: Env
    body: Term

    def __call__(self, v: "Value") -> "Value":
        return eval_term(self.env.extend(v), self.body)


@dataclass(frozen=True)
class IClosure:
    env: Env
    body: Term

    def __call__(self, r: IntervalElem) -> "Value":
        return eval_term(self.env.extend_i(r), self.body)


class Value:
    __slots__ = ()


class Neutral:
    __slots__ = ()


@dataclass(frozen=True)
class VNeu(Value):
    neu: Neutral


@dataclass(frozen=True)
class VUniv(Value):
    level: int
    tag: str | None = None


@dataclass(frozen=True)
class VPi(Value):
    name: str
    dom: Value
    cod: Closure


@dataclass(frozen=True)
class VLam(Value):
    name: str
    body: Closure


@dataclass(frozen=True)
class VSigma(Value):
    name: str
    fst: Value
    snd: Closure


@dataclass(frozen=True)
class VPair(Value):
    fst: Value
    snd: Value


@dataclass(frozen=True)
class VPath(Value):
    ty: Value
    lhs: Value
    rhs: Value


@dataclass(frozen=True)
class VPLam(Value):
    name: str
    body: IClosure


@dataclass(frozen=True)
class VConst(Value):
    name: str


@dataclass(frozen=True)
class VSuc(Value):
    arg: Value


@dataclass(frozen=True)
class VFin(Value):
    bound: Value


@dataclass(frozen=True)
class VFinLit(Value):
    k: int


@dataclass(frozen=True)
class VList(Value):
    elem: Value


@dataclass(frozen=True)
class VCons(Value):
    head: Value
    tail: Value


@dataclass(frozen=True)
class VParampara(Value):
    arg: Value


@dataclass(frozen=True)
class VAbhava(Value):
    pratiyogin: Value
    anuyogin: Value
    mode: Value


@dataclass(frozen=True)
class VHolds(Value):
    arg: Value


# neutrals


@dataclass(frozen=True)
class NVar(Neutral):
    level: int


@dataclass(frozen=True)
class NGlobal(Neutral):
    name: str


@dataclass(frozen=True)
class NLoop(Neutral):
    pass


@dataclass(frozen=True)
class NUa(Neutral):
    equiv: Value
    a: Value | None
    b: Value | None


@dataclass(frozen=True)
class NStuck(Neutral):
    """An ill-typed elimination of a canonical value; never produced on well-typed input."""
    value: Value


@dataclass(frozen=True)
class NApp(Neutral):
    fn: Neutral
    arg: Value


@dataclass(frozen=True)
class NFst(Neutral):
    arg: Neutral


@dataclass(frozen=True)
class NSnd(Neutral):
    arg: Neutral


@dataclass(frozen=True)
class NPApp(Neutral):
    fn: Neutral
    r: IntervalElem
    lhs: Value | None = field(default=None, compare=False)
    rhs: Value | None = field(default=None, compare=False)


@dataclass(frozen=True)
class NTransp(Neutral):
    line: Value
    r: IntervalElem
    arg: Value


@dataclass(frozen=True)
class NFinCase(Neutral):
    motive: Value
    scrut: Neutral
    branches: tuple


@dataclass(frozen=True)
class NAbsurd(Neutral):
    ty: Value
    arg: Neutral


def vvar(level: int) -> Value:
    return VNeu(NVar(level))


def _as_neutral(v: Value) -> Neutral:
    return v.neu if isinstance(v, VNeu) else NStuck(v)


# -- evaluation ----------------------------------------------------------------

def _tick() -> None:
    b = _BUDGET.get()
    if b.fuel < 0:
        return
    b.used += 1
    if b.used > b.fuel:
        raise FuelExhausted(f"evaluation exceeded {b.fuel} steps")


def eval_interval(env: Env, r: IntervalElem) -> IntervalElem:
    if not r.clauses or r.is_one:
        return r
    n = len(env.ivals)
    return r.subst(lambda ix: env.ivals[n - 1 - ix])


def eval_term(env: Env, t: Term) -> Value:
    _tick()
    match t:
        case Var(ix):
            return env.vals[len(env.vals) - 1 - ix]
        case Global(name):
            entry = env.glob.lookup(name)
            if entry is not None and entry.value is not None:
                return entry.value
            return VNeu(NGlobal(name))
        case App(fn, arg):
            return vapp(eval_term(env, fn), eval_term(env, arg))
        case Lam(name, body, _):
            return VLam(name, Closure(env, body))
        case Pi(name, dom, cod):
            return VPi(name, eval_term(env, dom), Closure(env, cod))
        case Sigma(name, a, b):
            return VSigma(name, eval_term(env, a), Closure(env, b))
        case Pair(a, b):
            return VPair(eval_term(env, a), eval_term(env, b))
        case Fst(a):
            return vfst(eval_term(env, a))
        case Snd(a):
            return vsnd(eval_term(env, a))
        case Univ(level, tag):
            return VUniv(level, tag)
        case PathTy(ty, lhs, rhs):
            return VPath(eval_term(env, ty), eval_term(env, lhs), eval_term(env, rhs))
        case PLam(name, body):
            return VPLam(name, IClosure(env, body))
        case PApp(fn, r, lhs, rhs):
            ends = None
            if lhs is not None and rhs is not None:
                ends = (eval_term(env, lhs), eval_term(env, rhs))
            return vpapp(eval_term(env, fn), eval_interval(env, r), ends)
        case Transp(line, r, arg):
            return vtransp(eval_term(env, line), eval_interval(env, r), eval_term(env, arg))
        case Ua(e, a, b):
            av = None if a is None else eval_term(env, a)
            bv = None if b is None else eval_term(env, b)
            return VNeu(NUa(eval_term(env, e), av, bv))
        case Let(_, _, val, body):
            return eval_term(env.extend(eval_term(env, val)), body)
        case Ann(term, _):
            return eval_term(env, term)
        case Const("loop"):
            return VNeu(NLoop())
        case Const(name):
            return VConst(name)
        case Suc(a):
            return VSuc(eval_term(env, a))
        case Fin(n):
            return VFin(eval_term(env, n))
        case FinLit(k):
            return VFinLit(k)
        case FinCase(motive, scrut, branches):
            s = eval_term(env, scrut)
            if isinstance(s, VFinLit) and s.k < len(branches) and "FIN" not in _BUDGET.get().disabled:
                return eval_term(env, branches[s.k])
            return VNeu(
                NFinCase(
                    eval_term(env, motive),
                    _as_neutral(s),
                    tuple(eval_term(env, b) for b in branches),
                )
            )
        case Absurd(ty, a):
            return VNeu(NAbsurd(eval_term(env, ty), _as_neutral(eval_term(env, a))))
        case ListTy(a):
            return VList(eval_term(env, a))
        case Cons(h, tl):
            return VCons(eval_term(env, h), eval_term(env, tl))
        case Parampara(a):
            return VParampara(eval_term(env, a))
        case Abhava(p, l, s):
            return vabhava(eval_term(env, p), eval_term(env, l), eval_term(env, s))
        case Holds(a):
            return VHolds(eval_term(env, a))
    raise TypeError(f"cannot evaluate {t!r}")


def vapp(f: Value, a: Value) -> Value:
    if isinstance(f, VLam):
        return f.body(a)
    return VNeu(NApp(_as_neutral(f), a))


def vfst(v: Value) -> Value:
    if isinstance(v, VPair):
        return v.fst
    return VNeu(NFst(_as_neutral(v)))


def vsnd(v: Value) -> Value:
    if isinstance(v, VPair):
        return v.snd
    return VNeu(NSnd(_as_neutral(v)))


def vpapp(p: Value, r: IntervalElem, ends: tuple[Value, Value] | None = None) -> Value:
    disabled = _BUDGET.get().disabled
    if isinstance(p, VPLam) and "R1" not in disabled:
        return p.body(r)
    n = _as_neutral(p)
    endpoint = r.is_zero or r.is_one
    if endpoint and "R2" not in disabled:
        if isinstance(n, NLoop):
            return VConst("base")
        if isinstance(n, NUa) and n.a is not None and n.b is not None:
            return n.a if r.is_zero else n.b
        if ends is not None:
            return ends[0] if r.is_zero else ends[1]
    if isinstance(n, NUa) and "UA_ID" not in disabled and _ua_is_identity(n):
        return n.a
    lhs, rhs = ends if ends is not None else (None, None)
    return VNeu(NPApp(n, r, lhs, rhs))


def vtransp(line: Value, r: IntervalElem, x: Value) -> Value:
    disabled = _BUDGET.get().disabled
    if isinstance(line, VPLam) and "R3" not in disabled and not mentions_ivar(line.body.body, 0):
        return x
    if (
        isinstance(line, VNeu)
        and isinstance(line.neu, NUa)
        and r.is_zero
        and "R4" not in disabled
    ):
        return vapp(vfst(line.neu.equiv), x)
    return VNeu(NTransp(line, r, x))


def vabhava(p: Value, l: Value, s: Value) -> Value:
    if (
        isinstance(p, VAbhava)
        and "R5" not in _BUDGET.get().disabled
        and same(p.anuyogin, l)
        and same(p.mode, s)
    ):
        return p.pratiyogin
    return VAbhava(p, l, s)


def _ua_is_identity(n: NUa) -> bool:
    if n.a is None or n.b is None or not same(n.a, n.b):
        return False
    x = vvar(_PROBE - 1)
    return same(vapp(vfst(n.equiv), x), x)


def same(a: Value, b: Value) -> bool:
    """Untyped conversion used during evaluation, with probe-level fresh variables."""
    return conv(_PROBE, _PROBE, a, b)


# -- read-back -----------------------------------------------------------------

def quote_interval(ilvl: int, r: IntervalElem) -> IntervalElem:
    if not r.clauses or r.is_one:
        return r
    return r.subst(lambda lv: IntervalElem.var(ilvl - 1 - lv))


def quote(lvl: int, ilvl: int, v: Value) -> Term:
    match v:
        case VNeu(n):
            return quote_neutral(lvl, ilvl, n)
        case VLam(name, body):
            return Lam(name, quote(lvl + 1, ilvl, body(vvar(lvl))))
        case VPi(name, dom, cod):
            return Pi(name, quote(lvl, ilvl, dom), quote(lvl + 1, ilvl, cod(vvar(lvl))))
        case VSigma(name, a, b):
            return Sigma(name, quote(lvl, ilvl, a), quote(lvl + 1, ilvl, b(vvar(lvl))))
        case VPair(a, b):
            return Pair(quote(lvl, ilvl, a), quote(lvl, ilvl, b))
        case VUniv(level, tag):
            return Univ(level, tag)
        case VPath(ty, lhs, rhs):
            return PathTy(quote(lvl, ilvl, ty), quote(lvl, ilvl, lhs), quote(lvl, ilvl, rhs))
        case VPLam(name, body):
            return PLam(name, quote(lvl, ilvl + 1, body(IntervalElem.var(ilvl))))
        case VConst(name):
            return Const(name)
        case VSuc(a):
            return Suc(quote(lvl, ilvl, a))
        case VFin(n):
            return Fin(quote(lvl, ilvl, n))
        case VFinLit(k):
            return FinLit(k)
        case VList(a):
            return ListTy(quote(lvl, ilvl, a))
        case VCons(h, tl):
            return Cons(quote(lvl, ilvl, h), quote(lvl, ilvl, tl))
        case VParampara(a):
            return Parampara(quote(lvl, ilvl, a))
        case VAbhava(p, l, s):
            return Abhava(quote(lvl, ilvl, p), quote(lvl, ilvl, l), quote(lvl, ilvl, s))
        case VHolds(a):
            return Holds(quote(lvl, ilvl, a))
    raise TypeError(f"cannot quote {v!r}")


def quote_neutral(lvl: int, ilvl: int, n: Neutral) -> Term:
    match n:
        case NVar(level):
            return Var(lvl - 1 - level)
        case NGlobal(name):
            return Global(name)
        case NLoop():
            return Const("loop")
        case NUa(e, a, b):
            return Ua(
                quote(lvl, ilvl, e),
                None if a is None else quote(lvl, ilvl, a),
                None if b is None else quote(lvl, ilvl, b),
            )
        case NStuck(v):
            return quote(lvl, ilvl, v)
        case NApp(f, a):
            return App(quote_neutral(lvl, ilvl, f), quote(lvl, ilvl, a))
        case NFst(a):
            return Fst(quote_neutral(lvl, ilvl, a))
        case NSnd(a):
            return Snd(quote_neutral(lvl, ilvl, a))
        case NPApp(f, r, lhs, rhs):
            return PApp(
                quote_neutral(lvl, ilvl, f),
                quote_interval(ilvl, r),
                None if lhs is None else quote(lvl, ilvl, lhs),
                None if rhs is None else quote(lvl, ilvl, rhs),
            )
        case NTransp(line, r, x):
            return Transp(quote(lvl, ilvl, line), quote_interval(ilvl, r), quote(lvl, ilvl, x))
        case NFinCase(m, s, bs):
            return FinCase(
                quote(lvl, ilvl, m),
                quote_neutral(lvl, ilvl, s),
                tuple(quote(lvl, ilvl, b) for b in bs),
            )
        case NAbsurd(ty, a):
            return Absurd(quote(lvl, ilvl, ty), quote_neutral(lvl, ilvl, a))
    raise TypeError(f"cannot quote neutral {n!r}")


# -- conversion ----------------------------------------------------------------

def conv(lvl: int, ilvl: int, a: Value, b: Value) -> bool:
    """Untyped (shape-directed) definitional equality with eta for functions, pairs and paths."""
    if a is b:
        return True
    _tick()
    if isinstance(a, VLam) or isinstance(b, VLam):
        if not isinstance(a, (VLam, VNeu)) or not isinstance(b, (VLam, VNeu)):
            return False
        x = vvar(lvl)
        return conv(lvl + 1, ilvl, vapp(a, x), vapp(b, x))
    if isinstance(a, VPLam) or isinstance(b, VPLam):
        if not isinstance(a, (VPLam, VNeu)) or not isinstance(b, (VPLam, VNeu)):
            return False
        i = IntervalElem.var(ilvl)
        return conv(lvl, ilvl + 1, vpapp(a, i), vpapp(b, i))
    if isinstance(a, VPair) or isinstance(b, VPair):
        if not isinstance(a, (VPair, VNeu)) or not isinstance(b, (VPair, VNeu)):
            return False
        return conv(lvl, ilvl, vfst(a), vfst(b)) and conv(lvl, ilvl, vsnd(a), vsnd(b))
    match a, b:
        case VNeu(n1), VNeu(n2):
            return conv_neutral(lvl, ilvl, n1, n2)
        case VUniv(l1, t1), VUniv(l2, t2):
            return l1 == l2 and t1 == t2
        case VPi(_, d1, c1), VPi(_, d2, c2):
            x = vvar(lvl)
            return conv(lvl, ilvl, d1, d2) and conv(lvl + 1, ilvl, c1(x), c2(x))
        case VSigma(_, d1, c1), VSigma(_, d2, c2):
            x = vvar(lvl)
            return conv(lvl, ilvl, d1, d2) and conv(lvl + 1, ilvl, c1(x), c2(x))
        case VPath(t1, l1, r1), VPath(t2, l2, r2):
            return conv(lvl, ilvl, t1, t2) and conv(lvl, ilvl, l1, l2) and conv(lvl, ilvl, r1, r2)
        case VConst(n1), VConst(n2):
            return n1 == n2
        case VSuc(x1), VSuc(x2):
            return conv(lvl, ilvl, x1, x2)
        case VFin(x1), VFin(x2):
            return conv(lvl, ilvl, x1, x2)
        case VFinLit(k1), VFinLit(k2):
            return k1 == k2
        case VList(x1), VList(x2):
            return conv(lvl, ilvl, x1, x2)
        case VCons(h1, t1), VCons(h2, t2):
            return conv(lvl, ilvl, h1, h2) and conv(lvl, ilvl, t1, t2)
        case VParampara(x1), VParampara(x2):
            return conv(lvl, ilvl, x1, x2)
        case VAbhava(p1, l1, s1), VAbhava(p2, l2, s2):
            return conv(lvl, ilvl, p1, p2) and conv(lvl, ilvl, l1, l2) and conv(lvl, ilvl, s1, s2)
        case VHolds(x1), VHolds(x2):
            return conv(lvl, ilvl, x1, x2)
    return False


def conv_neutral(lvl: int, ilvl: int, a: Neutral, b: Neutral) -> bool:
    match a, b:
        case NVar(l1), NVar(l2):
            return l1 == l2
        case NGlobal(n1), NGlobal(n2):
            return n1 == n2
        case NLoop(), NLoop():
            return True
        case NUa(e1, _, _), NUa(e2, _, _):
            return conv(lvl, ilvl, e1, e2)
        case NStuck(v1), NStuck(v2):
            return conv(lvl, ilvl, v1, v2)
        case NApp(f1, x1), NApp(f2, x2):
            return conv_neutral(lvl, ilvl, f1, f2) and conv(lvl, ilvl, x1, x2)
        case NFst(x1), NFst(x2):
            return conv_neutral(lvl, ilvl, x1, x2)
        case NSnd(x1), NSnd(x2):
            return conv_neutral(lvl, ilvl, x1, x2)
        case NPApp(f1, r1), NPApp(f2, r2):
            return r1 == r2 and conv_neutral(lvl, ilvl, f1, f2)
        case NTransp(p1, r1, x1), NTransp(p2, r2, x2):
            return r1 == r2 and conv(lvl, ilvl, p1, p2) and conv(lvl, ilvl, x1, x2)
        case NFinCase(m1, s1, b1), NFinCase(m2, s2, b2):
            return (
                len(b1) == len(b2)
                and conv_neutral(lvl, ilvl, s1, s2)
                and conv(lvl, ilvl, m1, m2)
                and all(conv(lvl, ilvl, x, y) for x, y in zip(b1, b2))
            )
        case NAbsurd(t1, x1), NAbsurd(t2, x2):
            return conv(lvl, ilvl, t1, t2) and conv_neutral(lvl, ilvl, x1, x2)
    return False


def conv_at(lvl: int, ilvl: int, a: Value, b: Value, ty: Value) -> bool:
    """Type-directed conversion: adds eta for Unit and pushes types under binders."""
    match ty:
        case VConst("Unit"):
            return True
        case VPi(_, _, cod):
            x = vvar(lvl)
            return conv_at(lvl + 1, ilvl, vapp(a, x), vapp(b, x), cod(x))
        case VSigma(_, fst_ty, snd_ty):
            a1, b1 = vfst(a), vfst(b)
            return conv_at(lvl, ilvl, a1, b1, fst_ty) and conv_at(
                lvl, ilvl, vsnd(a), vsnd(b), snd_ty(a1)
            )
        case VPath(elem_ty, lhs, rhs):
            i = IntervalElem.var(ilvl)
            return conv_at(lvl, ilvl + 1, vpapp(a, i, (lhs, rhs)), vpapp(b, i, (lhs, rhs)), elem_ty)
    return conv(lvl, ilvl, a, b)


def nat_value_to_int(v: Value) -> int | None:
    n = 0
    while isinstance(v, VSuc):
        n += 1
        v = v.arg
    if isinstance(v, VConst) and v.name == "zero":
        return n
    return None

