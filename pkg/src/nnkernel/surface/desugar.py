"""Name resolution and desugaring from surface trees to core terms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .. import syntax as C
from ..diagnostics import Diagnostic, NNError
from ..interval import IJoin, IMeet, INeg, IntervalElem, IOne, IVar, IZero, inorm
from . import ast as A
from .names import BUILTINS


@dataclass(frozen=True)
class Scope:
    names: tuple[str, ...] = ()
    inames: tuple[str, ...] = ()
    is_global: Callable[[str], bool] = lambda _name: False

    def bind(self, name: str) -> "Scope":
        return Scope(self.names + (name,), self.inames, self.is_global)

    def bind_i(self, name: str) -> "Scope":
        return Scope(self.names, self.inames + (name,), self.is_global)


def _err(code: str, msg: str, node: A.Node) -> NNError:
    return NNError(Diagnostic(code, msg, node.span))


def interval(r, scope: Scope, node: A.Node) -> IntervalElem:
    def resolve(e):
        match e:
            case IZero() | IOne():
                return e
            case IVar(name):
                if name in scope.inames:
                    pos = len(scope.inames) - 1 - scope.inames[::-1].index(name)
                    return IVar(len(scope.inames) - 1 - pos)
                if name in scope.names:
                    raise _err("UnresolvedName", f"{name!r} is a term variable, not an interval variable", node)
                raise _err("UnresolvedName", f"unknown interval variable {name!r}", node)
            case IMeet(a, b):
                return IMeet(resolve(a), resolve(b))
            case IJoin(a, b):
                return IJoin(resolve(a), resolve(b))
            case INeg(a):
                return INeg(resolve(a))
        raise TypeError(f"not an interval expression: {e!r}")

    return inorm(resolve(r))


def _spine(n: A.Node) -> tuple[A.Node, list[A.Node]]:
    args = []
    while isinstance(n, A.SApp):
        args.append(n.arg)
        n = n.fn
    args.reverse()
    return n, args


def term(n: A.Node, scope: Scope) -> C.Term:
    sp = n.span
    match n:
        case A.SVar(name):
            if name in scope.names:
                return C.Var(scope.names[::-1].index(name), span=sp)
            if scope.is_global(name):
                return C.Global(name, span=sp)
            if name in scope.inames:
                raise _err("UnresolvedName", f"interval variable {name!r} used as a term", n)
            raise _err("UnresolvedName", f"unknown name {name!r}", n)
        case A.SNum(v):
            return C.nat_literal(v)
        case A.SFinLit(k):
            return C.FinLit(k, span=sp)
        case A.SUniv(level, tag):
            return C.Univ(level, tag, span=sp)
        case A.SConst() | A.SApp():
            return _application(n, scope)
        case A.SPApp(fn, r):
            return C.PApp(term(fn, scope), interval(r, scope, n), span=sp)
        case A.SProj(arg, which, _):
            cls = C.Fst if which == 1 else C.Snd
            return cls(term(arg, scope), span=sp)
        case A.SLam(binders, body):
            return _lam(list(binders), body, scope, sp)
        case A.SPLam(names, body):
            inner = scope
            for x in names:
                inner = inner.bind_i(x)
            out = term(body, inner)
            for x in reversed(names):
                out = C.PLam(x, out, span=sp)
            return out
        case A.SPi(groups, cod):
            return _telescope(C.Pi, list(groups), cod, scope, sp)
        case A.SSigma(groups, body):
            return _telescope(C.Sigma, list(groups), body, scope, sp)
        case A.SArrow(dom, cod):
            return C.Pi("_", term(dom, scope), term(cod, scope.bind("_")), span=sp)
        case A.SProd(left, right):
            return C.Sigma("_", term(left, scope), term(right, scope.bind("_")), span=sp)
        case A.SPair(a, b):
            return C.Pair(term(a, scope), term(b, scope), span=sp)
        case A.SAnn(t, ty):
            return C.Ann(term(t, scope), term(ty, scope), span=sp)
        case A.SLet(name, ty, val, body):
            return C.Let(name, term(ty, scope), term(val, scope), term(body, scope.bind(name)), span=sp)
        case A.STransp(line, r, arg):
            return C.Transp(term(line, scope), interval(r, scope, n), term(arg, scope), span=sp)
        case A.SFinCase(ty, scrut, branches):
            return C.FinCase(
                term(ty, scope), term(scrut, scope), tuple(term(b, scope) for b in branches), span=sp
            )
    raise TypeError(f"cannot desugar {n!r}")


def _lam(binders: list[A.Group], body: A.Node, scope: Scope, sp) -> C.Term:
    if not binders:
        return term(body, scope)
    g, rest = binders[0], binders[1:]
    names = list(g.names)
    x = names[0]
    dom = None if g.ty is None else term(g.ty, scope)
    if len(names) > 1:
        rest = [A.Group(tuple(names[1:]), g.ty, span=g.span)] + rest
    return C.Lam(x, _lam(rest, body, scope.bind(x), sp), dom, span=sp)


def _telescope(cls, groups: list[A.Group], body: A.Node, scope: Scope, sp) -> C.Term:
    if not groups:
        return term(body, scope)
    g, rest = groups[0], groups[1:]
    x = g.names[0]
    dom = term(g.ty, scope)
    if len(g.names) > 1:
        rest = [A.Group(g.names[1:], g.ty, span=g.span)] + rest
    return cls(x, dom, _telescope(cls, rest, body, scope.bind(x), sp), span=sp)


def _application(n: A.Node, scope: Scope) -> C.Term:
    head, args = _spine(n)
    sp = n.span
    if not isinstance(head, A.SConst):
        out = term(head, scope)
        for a in args:
            out = C.App(out, term(a, scope), span=sp)
        return out
    name = head.name
    arity = BUILTINS[name]
    if len(args) < arity:
        raise _err("ArityMismatch", f"{name} expects {arity} argument(s), got {len(args)}", n)
    used, extra = args[:arity], args[arity:]
    out = _builtin(name, used, scope, head.span if not used else sp)
    for a in extra:
        out = C.App(out, term(a, scope), span=sp)
    return out


def _builtin(name: str, args: list[A.Node], scope: Scope, sp) -> C.Term:
    def d(i: int, sc: Scope = scope) -> C.Term:
        return term(args[i], sc)

    match name:
        case "suc":
            return C.Suc(d(0), span=sp)
        case "absurd":
            return C.Absurd(d(0), d(1), span=sp)
        case "Fin":
            return C.Fin(d(0), span=sp)
        case "List":
            return C.ListTy(d(0), span=sp)
        case "cons":
            return C.Cons(d(0), d(1), span=sp)
        case "parampara":
            return C.Parampara(d(0), span=sp)
        case "Path":
            return C.PathTy(d(0), d(1), d(2), span=sp)
        case "refl":
            return C.PLam("_", d(0, scope.bind_i("_")), span=sp)
        case "sym":
            p = d(0, scope.bind_i("i"))
            return C.PLam("i", C.PApp(p, IntervalElem.var(0).neg(), span=sp), span=sp)
        case "ua":
            return C.Ua(d(0), span=sp)
        case "Abhava":
            return C.Abhava(d(0), d(1), d(2), span=sp)
        case "holds":
            return C.Holds(d(0), span=sp)
        case "fst":
            return C.Fst(d(0), span=sp)
        case "snd":
            return C.Snd(d(0), span=sp)
    return C.Const(name, span=sp)
