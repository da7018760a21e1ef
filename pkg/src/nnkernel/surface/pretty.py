"""Printers: canonical surface text, and core terms resugared with names."""

from __future__ import annotations

from .. import syntax as C
from ..interval import IJoin, IMeet, INeg, IntervalElem, IOne, IVar, IZero, to_expr
from . import ast as A

P_EXPR, P_PROD, P_APP, P_POST, P_ATOM = range(5)


def _prec(n: A.Node) -> int:
    match n:
        case A.SLam() | A.SPLam() | A.SLet() | A.SPi() | A.SSigma() | A.SArrow():
            return P_EXPR
        case A.SProd():
            return P_PROD
        case A.SApp() | A.SPApp() | A.STransp() | A.SFinCase():
            return P_APP
        case A.SProj():
            return P_POST
    return P_ATOM


def _iexpr(e, level: int = 0) -> str:
    match e:
        case IZero():
            return "0"
        case IOne():
            return "1"
        case IVar(name):
            return str(name)
        case INeg(a):
            return "~" + _iexpr(a, 2)
        case IMeet(a, b):
            s = f"{_iexpr(a, 1)} /\\ {_iexpr(b, 2)}"
            return s if level <= 1 else f"({s})"
        case IJoin(a, b):
            s = f"{_iexpr(a, 0)} \\/ {_iexpr(b, 1)}"
            return s if level == 0 else f"({s})"
    raise TypeError(f"not an interval expression: {e!r}")


def _group(g: A.Group) -> str:
    names = " ".join(g.names)
    return names if g.ty is None else f"({names} : {term(g.ty)})"


def _univ(level: int, tag: str | None) -> str:
    return f"U_{tag}" if tag else f"Type{level}"


def term(n: A.Node, level: int = P_EXPR) -> str:
    s = _term(n)
    return s if _prec(n) >= level else f"({s})"


def _arrow_left(n: A.Node) -> str:
    # An ascription on the left of '->' or '*' would re-read as a binder.
    if isinstance(n, A.SAnn):
        return f"({term(n)})"
    return term(n, P_PROD)


def _term(n: A.Node) -> str:
    match n:
        case A.SVar(name) | A.SConst(name):
            return name
        case A.SNum(v):
            return str(v)
        case A.SFinLit(k):
            return f"#{k}"
        case A.SUniv(lv, tag):
            return _univ(lv, tag)
        case A.SApp(f, a):
            return f"{term(f, P_APP)} {term(a, P_POST)}"
        case A.SPApp(f, r):
            return f"{term(f, P_APP)} @ {_iexpr(r, 2)}"
        case A.SProj(a, _, spelling):
            return f"{term(a, P_POST)}.{spelling}"
        case A.SLam(binders, body):
            return "\\" + " ".join(_group(g) for g in binders) + ". " + term(body)
        case A.SPLam(names, body):
            return "<" + " ".join(names) + "> " + term(body)
        case A.SLet(name, ty, val, body):
            return f"let {name} : {term(ty)} = {term(val)} in {term(body)}"
        case A.SPi(groups, cod):
            return " ".join(_group(g) for g in groups) + " -> " + term(cod)
        case A.SSigma(groups, body):
            return " ".join(_group(g) for g in groups) + " * " + term(body)
        case A.SArrow(dom, cod):
            return f"{_arrow_left(dom)} -> {term(cod)}"
        case A.SProd(left, right):
            lhs = f"({term(left)})" if isinstance(left, A.SAnn) else term(left, P_APP)
            if isinstance(right, (A.SSigma, A.SPi)):
                rhs = f"({term(right)})"
            else:
                rhs = term(right, P_PROD)
            return f"{lhs} * {rhs}"
        case A.SPair():
            items = []
            cur: A.Node = n
            while isinstance(cur, A.SPair):
                items.append(term(cur.fst))
                cur = cur.snd
            items.append(term(cur))
            return "(" + ", ".join(items) + ")"
        case A.SAnn(t, ty):
            return f"({term(t)} : {term(ty)})"
        case A.STransp(line, r, arg):
            return f"transp {term(line, P_POST)} {_iexpr(r, 2)} {term(arg, P_POST)}"
        case A.SFinCase(ty, scrut, branches):
            inner = " ; ".join(term(b) for b in branches)
            return f"fin-case {term(ty, P_POST)} {term(scrut, P_POST)} {{ {inner} }}"
    raise TypeError(f"cannot print {n!r}")


def _item(it: A.Node) -> str:
    match it:
        case A.MLoci(names):
            return "loci: " + " ".join(names)
        case A.MPred(name, members):
            return f"pred {name} = {{{' '.join(members)}}}"
        case A.MPaksa(locus):
            return f"paksa {locus}"
        case A.MObservedAbsent(pred, locus):
            return f"observed-absent {pred} at {locus}"
        case A.MInheres(locus, members):
            return f"inheres {locus} = {{{' '.join(members)}}}"
        case A.MExpectVyapti(h, s, verdict):
            return f"expect vyapti {h} {s} => {' '.join(verdict)}"
        case A.MExpectParyapti(locus, k, verdict):
            return f"expect paryapti {locus} {k} => {verdict}"
    raise TypeError(f"cannot print model item {it!r}")


def decl(d: A.Node, indent: str = "") -> str:
    def params(ps):
        return "".join(" " + _group(g) for g in ps)

    match d:
        case A.Postulate(name, ps, ty):
            return f"{indent}postulate {name}{params(ps)} : {term(ty)}"
        case A.Def(name, ps, ty, body):
            return f"{indent}def {name}{params(ps)} : {term(ty)} =\n{indent}  {term(body)}"
        case A.Check(t, ty):
            return f"{indent}check {term(t)} : {term(ty)}"
        case A.FailCheck(t, ty, code, lab):
            tail = f" {lab}" if lab else ""
            return f"{indent}fail-check {term(t)} : {term(ty)} expecting {code}{tail}"
        case A.Model(name, items):
            body = ";\n".join(f"{indent}  {_item(i)}" for i in items)
            return f"{indent}model {name} {{\n{body}\n{indent}}}" if items else f"{indent}model {name} {{ }}"
        case A.Example(name, anchor, decls):
            inner = "\n".join(decl(x, indent + "  ") for x in decls)
            return f'{indent}example {name} paper "{anchor}" {{\n{inner}\n{indent}}}'
    raise TypeError(f"cannot print declaration {d!r}")


def module(m: A.SourceModule) -> str:
    return "\n\n".join(decl(d) for d in m.decls) + "\n"


# -- core terms ----------------------------------------------------------------

def _globals_in(t: C.Term, acc: set) -> set:
    if isinstance(t, C.Global):
        acc.add(t.name)
    for child in C._children(t):
        if isinstance(child, C.Term):
            _globals_in(child, acc)
        elif isinstance(child, tuple):
            for c in child:
                if isinstance(c, C.Term):
                    _globals_in(c, acc)
    return acc


class _Namer:
    def __init__(self, taken: set):
        self.taken = taken

    def fresh(self, hint: str, scope: list) -> str:
        base = hint if hint and hint != "_" else "x"
        name = base
        k = 1
        while name in scope or name in self.taken:
            name = f"{base}{k}"
            k += 1
        return name


def _interval(r: IntervalElem, inames: list) -> object:
    e = to_expr(r)

    def rename(x):
        match x:
            case IVar(ix):
                return IVar(inames[len(inames) - 1 - ix] if 0 <= ix < len(inames) else f"?i{ix}")
            case IMeet(a, b):
                return IMeet(rename(a), rename(b))
            case IJoin(a, b):
                return IJoin(rename(a), rename(b))
            case INeg(a):
                return INeg(rename(a))
        return x

    return rename(e)


def resugar(t: C.Term, names: list | tuple = (), inames: list | tuple = ()) -> A.Node:
    """Turn a core term back into surface syntax, inventing readable binder names."""
    namer = _Namer(_globals_in(t, set()))
    return _rs(t, list(names), list(inames), namer)


def _nat(t: C.Term) -> int | None:
    n = 0
    while isinstance(t, C.Suc):
        n += 1
        t = t.arg
    return n if isinstance(t, C.Const) and t.name == "zero" else None


def _rs(t: C.Term, names: list, inames: list, nm: _Namer) -> A.Node:
    def go(x, ns=names, ins=inames):
        return _rs(x, ns, ins, nm)

    def app(head: str, *args):
        out: A.Node = A.SConst(head)
        for a in args:
            out = A.SApp(out, go(a))
        return out

    match t:
        case C.Var(ix):
            if 0 <= ix < len(names):
                return A.SVar(names[len(names) - 1 - ix])
            return A.SVar(f"?v{ix}")
        case C.Global(name):
            return A.SVar(name)
        case C.Univ(level, tag):
            return A.SUniv(level, tag)
        case C.Pi(name, dom, cod):
            if not C.mentions_var(cod, 0):
                return A.SArrow(go(dom), go(cod, names + ["_"]))
            x = nm.fresh(name, names)
            return A.SPi((A.Group((x,), go(dom)),), go(cod, names + [x]))
        case C.Sigma(name, a, b):
            if not C.mentions_var(b, 0):
                return A.SProd(go(a), go(b, names + ["_"]))
            x = nm.fresh(name, names)
            return A.SSigma((A.Group((x,), go(a)),), go(b, names + [x]))
        case C.Lam(name, body, dom):
            x = nm.fresh(name, names) if C.mentions_var(body, 0) else "_"
            group = A.Group((x,), None if dom is None else go(dom))
            inner = go(body, names + [x])
            if isinstance(inner, A.SLam) and dom is None and all(g.ty is None for g in inner.binders):
                return A.SLam((group,) + inner.binders, inner.body)
            return A.SLam((group,), inner)
        case C.App(f, a):
            return A.SApp(go(f), go(a))
        case C.Pair(a, b):
            return A.SPair(go(a), go(b))
        case C.Fst(a):
            return A.SProj(go(a), 1, "1")
        case C.Snd(a):
            return A.SProj(go(a), 2, "2")
        case C.PathTy(ty, lhs, rhs):
            return app("Path", ty, lhs, rhs)
        case C.PLam(name, body):
            i = nm.fresh(name if name != "_" else "i", inames)
            inner = go(body, names, inames + [i])
            if isinstance(inner, A.SPLam):
                return A.SPLam((i,) + inner.names, inner.body)
            return A.SPLam((i,), inner)
        case C.PApp(fn, r, _, _):
            return A.SPApp(go(fn), _interval(r, inames))
        case C.Transp(line, r, arg):
            return A.STransp(go(line), _interval(r, inames), go(arg))
        case C.Ua(e, _, _):
            return app("ua", e)
        case C.Let(name, ty, val, body):
            x = nm.fresh(name, names)
            return A.SLet(x, go(ty), go(val), go(body, names + [x]))
        case C.Ann(term_, ty):
            return A.SAnn(go(term_), go(ty))
        case C.Const(name):
            if name == "zero":
                return A.SNum(0)
            return A.SConst(name)
        case C.Suc(a):
            k = _nat(t)
            return A.SNum(k) if k is not None else app("suc", a)
        case C.Fin(bound):
            return app("Fin", bound)
        case C.FinLit(k):
            return A.SFinLit(k)
        case C.FinCase(m, s, bs):
            return A.SFinCase(go(m), go(s), tuple(go(b) for b in bs))
        case C.Absurd(ty, a):
            return app("absurd", ty, a)
        case C.ListTy(a):
            return app("List", a)
        case C.Cons(h, tl):
            return app("cons", h, tl)
        case C.Parampara(a):
            return app("parampara", a)
        case C.Abhava(p, l, s):
            return app("Abhava", p, l, s)
        case C.Holds(a):
            return app("holds", a)
    raise TypeError(f"cannot resugar {t!r}")


def pretty(x, names: list | tuple = (), inames: list | tuple = ()) -> str:
    """Print a module, declaration, surface term or core term."""
    if isinstance(x, A.SourceModule):
        return module(x)
    if isinstance(x, (A.Postulate, A.Def, A.Check, A.FailCheck, A.Model, A.Example)):
        return decl(x)
    if isinstance(x, C.Term):
        return term(resugar(x, names, inames))
    if isinstance(x, A.Node):
        return term(x)
    raise TypeError(f"cannot print {x!r}")
