"""Bidirectional type checking with elaboration.

``_infer`` and ``_check`` return an elaborated copy of the input term in which
path applications and ``ua`` carry their endpoints, so that evaluation can
compute a stuck path at ``0`` and ``1``.

Universes are cumulative.  The level of a type is read off its normal form
when the syntactic level is too large: ``def Not (A : Type2) : Type2 = A -> Empty``
can then still be used at ``Type0`` on an argument living in ``Type0``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import syntax as C
from .diagnostics import Diagnostic, NNError
from .interval import ONE, ZERO, IntervalElem
from .nbe import (
    Closure, Env, FuelExhausted, Globals, Value, VAbhava, VConst, VFin,
    VList, VPath, VPi, VSigma, VUniv, conv, conv_at, eval_interval, eval_term, nat_value_to_int,
    VFinLit, quote, vapp, vfst, vpapp, vvar,
)


@dataclass(frozen=True)
class Context:
    glob: Globals
    names: tuple[str, ...] = ()
    types: tuple[Value, ...] = ()
    vals: tuple[Value, ...] = ()
    inames: tuple[str, ...] = ()

    @property
    def lvl(self) -> int:
        return len(self.vals)

    @property
    def ilvl(self) -> int:
        return len(self.inames)

    @property
    def env(self) -> Env:
        return Env(self.glob, self.vals, tuple(IntervalElem.var(k) for k in range(self.ilvl)))

    def bind(self, name: str, ty: Value) -> "Context":
        return Context(self.glob, self.names + (name,), self.types + (ty,),
                       self.vals + (vvar(self.lvl),), self.inames)

    def define(self, name: str, ty: Value, val: Value) -> "Context":
        return Context(self.glob, self.names + (name,), self.types + (ty,), self.vals + (val,), self.inames)

    def bind_i(self, name: str) -> "Context":
        return Context(self.glob, self.names, self.types, self.vals, self.inames + (name,))

    def eval(self, t: C.Term) -> Value:
        return eval_term(self.env, t)

    def quote(self, v: Value) -> C.Term:
        return quote(self.lvl, self.ilvl, v)

    def show(self, v: Value | C.Term) -> str:
        from .surface.pretty import pretty

        t = v if isinstance(v, C.Term) else self.quote(v)
        return pretty(t, self.names, self.inames)


def _fail(code: str, msg: str, t: C.Term | None = None, **extra) -> NNError:
    return NNError(Diagnostic(code, msg, None if t is None else t.span, **extra))


def _mismatch(ctx: Context, t: C.Term, expected: Value, actual: Value, what: str = "type mismatch") -> NNError:
    code = "TypeMismatch"
    if _categorial_clash(ctx, expected, actual):
        code = "CategorialMismatch"
    elif isinstance(expected, VUniv) and isinstance(actual, VUniv):
        code = "UniverseInconsistency"
    return NNError(
        Diagnostic(
            code, what, t.span,
            expected=ctx.show(expected), actual=ctx.show(actual),
            expected_term=ctx.quote(expected), actual_term=ctx.quote(actual),
        )
    )


# -- universes -------------------------------------------------------------------

def univ_leq(l1: int, t1: str | None, l2: int, t2: str | None) -> bool:
    return l1 <= l2 and (t2 is None or t1 == t2)


def _tag_of_type(ctx: Context, ty: Value) -> str | None:
    """Categorial tag of the universe a type lives in (if any)."""
    try:
        return sort_of(ctx, ty)[1]
    except NNError:
        return None


def _categorial_clash(ctx: Context, expected: Value, actual: Value) -> bool:
    if isinstance(expected, VUniv) and isinstance(actual, VUniv):
        return expected.tag is not None and actual.tag is not None and expected.tag != actual.tag
    te, ta = _tag_of_type(ctx, expected), _tag_of_type(ctx, actual)
    return te is not None and ta is not None and te != ta


def sort_of(ctx: Context, ty: Value) -> tuple[int, str | None]:
    """Smallest universe containing the type ``ty``, computed on its normal form."""
    match ty:
        case VUniv(level, _):
            return level + 1, None
        case VPi(name, dom, cod) | VSigma(name, dom, cod):
            la, _ = sort_of(ctx, dom)
            lb, _ = sort_of(ctx.bind(name, dom), cod(vvar(ctx.lvl)))
            return max(la, lb), None
        case VPath(a, _, _):
            return sort_of(ctx, a)[0], None
        case VConst("Nat" | "Empty" | "Unit" | "S1" | "Pratyasatti") | VFin():
            return 0, None
        case VList(a):
            return sort_of(ctx, a)[0], None
        case VAbhava(p, _, _):
            return sort_of(ctx, p)[0], None
    _, u = _infer(ctx, ctx.quote(ty))
    if not isinstance(u, VUniv):
        raise _fail("TypeMismatch", "expected a type", actual=ctx.show(u))
    return u.level, u.tag


# -- subtyping -----------------------------------------------------------------

def subtype(ctx: Context, a: Value, b: Value) -> bool:
    match a, b:
        case VUniv(l1, t1), VUniv(l2, t2):
            return univ_leq(l1, t1, l2, t2)
        case VPi(n1, d1, c1), VPi(_, d2, c2):
            x = vvar(ctx.lvl)
            inner = ctx.bind(n1, d1)
            return conv(ctx.lvl, ctx.ilvl, d1, d2) and subtype(inner, c1(x), c2(x))
        case VSigma(n1, d1, c1), VSigma(_, d2, c2):
            x = vvar(ctx.lvl)
            return subtype(ctx, d1, d2) and subtype(ctx.bind(n1, d1), c1(x), c2(x))
        case VPath(t1, l1, r1), VPath(t2, l2, r2):
            return (
                subtype(ctx, t1, t2)
                and conv_at(ctx.lvl, ctx.ilvl, l1, l2, t2)
                and conv_at(ctx.lvl, ctx.ilvl, r1, r2, t2)
            )
    return conv(ctx.lvl, ctx.ilvl, a, b)


# -- the kernel's equivalence type ---------------------------------------------

# Under an environment [A, B]:
#   (f : A -> B) * (g : B -> A) * ((x : A) -> Path A (g (f x)) x) * ((y : B) -> Path B (f (g y)) y)
EQUIV_TERM = C.Sigma(
    "f", C.Pi("x", C.Var(1), C.Var(1)),
    C.Sigma(
        "g", C.Pi("y", C.Var(1), C.Var(3)),
        C.Sigma(
            "ret", C.Pi("x", C.Var(3), C.PathTy(C.Var(4), C.App(C.Var(1), C.App(C.Var(2), C.Var(0))), C.Var(0))),
            C.Pi("y", C.Var(3), C.PathTy(C.Var(4), C.App(C.Var(3), C.App(C.Var(2), C.Var(0))), C.Var(0))),
        ),
    ),
)


def equiv_type(glob: Globals, a: Value, b: Value) -> Value:
    return eval_term(Env(glob, (a, b)), EQUIV_TERM)


# -- elaboration -----------------------------------------------------------------

def _spanned(t: C.Term, err: NNError) -> NNError:
    if err.diagnostic.span is None and t.span is not None:
        err.diagnostic.span = t.span
    return err


def _elab_type(ctx: Context, t: C.Term) -> tuple[C.Term, int, str | None]:
    t2, u = _infer(ctx, t)
    if not isinstance(u, VUniv):
        raise _fail("TypeMismatch", "expected a type", t, actual=ctx.show(u), actual_term=ctx.quote(u))
    return t2, u.level, u.tag


def _check_interval(ctx: Context, r: IntervalElem, t: C.Term) -> None:
    for v in r.variables():
        if not (isinstance(v, int) and 0 <= v < ctx.ilvl):
            raise _fail("UnboundVariable", f"interval variable #{v} is out of scope", t)


def _infer(ctx: Context, t: C.Term) -> tuple[C.Term, Value]:
    try:
        return _infer_(ctx, t)
    except NNError as e:
        raise _spanned(t, e)
    except FuelExhausted as e:
        raise _fail("FuelExhausted", str(e), t) from None


def _check(ctx: Context, t: C.Term, ty: Value) -> C.Term:
    try:
        return _check_(ctx, t, ty)
    except NNError as e:
        raise _spanned(t, e)
    except FuelExhausted as e:
        raise _fail("FuelExhausted", str(e), t) from None


def _infer_(ctx: Context, t: C.Term) -> tuple[C.Term, Value]:
    match t:
        case C.Var(ix):
            if not 0 <= ix < ctx.lvl:
                raise _fail("UnboundVariable", f"variable #{ix} is out of scope", t)
            return t, ctx.types[ctx.lvl - 1 - ix]
        case C.Global(name):
            entry = ctx.glob.lookup(name)
            if entry is None:
                raise _fail("UnboundVariable", f"unknown global {name!r}", t)
            return t, entry.type
        case C.Univ(level, tag):
            if tag is not None and C.CATEGORIAL_TAGS.get(tag) != level:
                raise _fail("UniverseInconsistency", f"universe tag {tag!r} lives at a fixed level", t)
            return t, VUniv(level + 1)
        case C.Pi(name, dom, cod) | C.Sigma(name, dom, cod):
            dom2, la, _ = _elab_type(ctx, dom)
            cod2, lb, _ = _elab_type(ctx.bind(name, ctx.eval(dom2)), cod)
            return type(t)(name, dom2, cod2, span=t.span), VUniv(max(la, lb))
        case C.Lam(name, body, dom) if dom is not None:
            dom2, _, _ = _elab_type(ctx, dom)
            a = ctx.eval(dom2)
            body2, b = _infer(ctx.bind(name, a), body)
            cod = quote(ctx.lvl + 1, ctx.ilvl, b)
            return C.Lam(name, body2, dom2, span=t.span), VPi(name, a, Closure(ctx.env, cod))
        case C.App(fn, arg):
            fn2, fty = _infer(ctx, fn)
            if not isinstance(fty, VPi):
                raise _fail("NotAFunction", "applied term is not a function", fn,
                            actual=ctx.show(fty), actual_term=ctx.quote(fty))
            arg2 = _check(ctx, arg, fty.dom)
            return C.App(fn2, arg2, span=t.span), fty.cod(ctx.eval(arg2))
        case C.Pair(a, b):
            a2, ta = _infer(ctx, a)
            b2, tb = _infer(ctx, b)
            return C.Pair(a2, b2, span=t.span), VSigma("_", ta, Closure(ctx.env, quote(ctx.lvl + 1, ctx.ilvl, tb)))
        case C.Fst(p) | C.Snd(p):
            p2, pty = _infer(ctx, p)
            if not isinstance(pty, VSigma):
                raise _fail("NotAPair", "projection from a non-pair", p,
                            actual=ctx.show(pty), actual_term=ctx.quote(pty))
            if isinstance(t, C.Fst):
                return C.Fst(p2, span=t.span), pty.fst
            return C.Snd(p2, span=t.span), pty.snd(vfst(ctx.eval(p2)))
        case C.PathTy(a, x, y):
            a2, la, _ = _elab_type(ctx, a)
            av = ctx.eval(a2)
            x2 = _check(ctx, x, av)
            y2 = _check(ctx, y, av)
            if isinstance(av, VUniv):
                tx, ty_ = _tag_of_type(ctx, ctx.eval(x2)), _tag_of_type(ctx, ctx.eval(y2))
                if tx is not None and ty_ is not None and tx != ty_:
                    raise _fail(
                        "CategorialMismatch",
                        f"a path cannot relate a {tx} type to a {ty_} type",
                        t, expected=f"U_{tx}", actual=f"U_{ty_}",
                    )
            return C.PathTy(a2, x2, y2, span=t.span), VUniv(la)
        case C.PLam(name, body):
            inner = ctx.bind_i(name)
            body2, a = _infer(inner, body)
            aterm = quote(inner.lvl, inner.ilvl, a)
            if C.mentions_ivar(aterm, 0):
                raise _fail("CannotInfer", "cannot infer the type of a dependent path abstraction", t)
            av = eval_term(ctx.env.extend_i(ZERO), aterm)
            v0 = eval_term(ctx.env.extend_i(ZERO), body2)
            v1 = eval_term(ctx.env.extend_i(ONE), body2)
            return C.PLam(name, body2, span=t.span), VPath(av, v0, v1)
        case C.PApp(fn, r, _, _):
            fn2, pty = _infer(ctx, fn)
            if not isinstance(pty, VPath):
                raise _fail("NotAPath", "applied term is not a path", fn,
                            actual=ctx.show(pty), actual_term=ctx.quote(pty))
            _check_interval(ctx, r, t)
            return C.PApp(fn2, r, ctx.quote(pty.lhs), ctx.quote(pty.rhs), span=t.span), pty.ty
        case C.Transp(line, r, arg):
            line2, lty = _infer(ctx, line)
            if not (isinstance(lty, VPath) and isinstance(lty.ty, VUniv)):
                raise _fail("NotAPath", "transport needs a path between types", line,
                            actual=ctx.show(lty), actual_term=ctx.quote(lty))
            _check_interval(ctx, r, t)
            lv = ctx.eval(line2)
            src = vpapp(lv, eval_interval(ctx.env, r), (lty.lhs, lty.rhs))
            arg2 = _check(ctx, arg, src)
            return C.Transp(line2, r, arg2, span=t.span), lty.rhs
        case C.Ua(e, _, _):
            e2, ety = _infer(ctx, e)
            a, b = _equiv_ends(ctx, ety, e)
            la, _ = sort_of(ctx, a)
            lb, _ = sort_of(ctx, b)
            if not subtype(ctx, ety, equiv_type(ctx.glob, a, b)):
                raise _fail("TypeMismatch", "ua expects an equivalence", e,
                            expected=ctx.show(equiv_type(ctx.glob, a, b)), actual=ctx.show(ety))
            return C.Ua(e2, ctx.quote(a), ctx.quote(b), span=t.span), VPath(VUniv(max(la, lb)), a, b)
        case C.Let(name, ty, val, body):
            ty2, _, _ = _elab_type(ctx, ty)
            tv = ctx.eval(ty2)
            val2 = _check(ctx, val, tv)
            body2, bty = _infer(ctx.define(name, tv, ctx.eval(val2)), body)
            return C.Let(name, ty2, val2, body2, span=t.span), bty
        case C.Ann(term, ty):
            ty2, _, _ = _elab_type(ctx, ty)
            tv = ctx.eval(ty2)
            return C.Ann(_check(ctx, term, tv), ty2, span=t.span), tv
        case C.Const(name):
            if name in ("Nat", "Empty", "Unit", "S1", "Pratyasatti"):
                return t, VUniv(0)
            if name == "zero":
                return t, VConst("Nat")
            if name == "tt":
                return t, VConst("Unit")
            if name == "base":
                return t, VConst("S1")
            if name == "loop":
                return t, VPath(VConst("S1"), VConst("base"), VConst("base"))
            if name in C.PRATYASATTI_CONS:
                return t, VConst("Pratyasatti")
            raise _fail("CannotInfer", f"cannot infer the type of {name!r}", t)
        case C.Suc(n):
            return C.Suc(_check(ctx, n, VConst("Nat")), span=t.span), VConst("Nat")
        case C.Fin(n):
            return C.Fin(_check(ctx, n, VConst("Nat")), span=t.span), VUniv(0)
        case C.ListTy(a):
            a2, la, _ = _elab_type(ctx, a)
            return C.ListTy(a2, span=t.span), VUniv(la)
        case C.Parampara(xs):
            xs2 = _check(ctx, xs, VList(VConst("Pratyasatti")))
            return C.Parampara(xs2, span=t.span), VConst("Pratyasatti")
        case C.Absurd(ty, a):
            ty2, _, _ = _elab_type(ctx, ty)
            a2 = _check(ctx, a, VConst("Empty"))
            return C.Absurd(ty2, a2, span=t.span), ctx.eval(ty2)
        case C.FinCase(motive, scrut, branches):
            s2, sty = _infer(ctx, scrut)
            n = nat_value_to_int(sty.bound) if isinstance(sty, VFin) else None
            if n is None:
                raise _fail("TypeMismatch", "fin-case scrutinee must have type Fin n for a literal n", scrut,
                            actual=ctx.show(sty), actual_term=ctx.quote(sty))
            if n != len(branches):
                raise _fail("TypeMismatch", f"fin-case over Fin {n} needs {n} branches, got {len(branches)}", t)
            m2, mty = _infer(ctx, motive)
            mv = ctx.eval(m2)
            if isinstance(mty, VUniv):
                bs = tuple(_check(ctx, b, mv) for b in branches)
                return C.FinCase(m2, s2, bs, span=t.span), mv
            if (
                isinstance(mty, VPi)
                and conv(ctx.lvl, ctx.ilvl, mty.dom, sty)
                and isinstance(mty.cod(vvar(ctx.lvl)), VUniv)
            ):
                bs = tuple(_check(ctx, b, vapp(mv, VFinLit(k))) for k, b in enumerate(branches))
                return C.FinCase(m2, s2, bs, span=t.span), vapp(mv, ctx.eval(s2))
            raise _fail("TypeMismatch", "fin-case motive must be a type or a family over the scrutinee's type",
                        motive, actual=ctx.show(mty), actual_term=ctx.quote(mty))
        case C.Abhava(p, loc, s):
            p2, lp, _ = _elab_type(ctx, p)
            loc2, _ = _infer(ctx, loc)
            s2 = _check(ctx, s, VConst("Pratyasatti"))
            return C.Abhava(p2, loc2, s2, span=t.span), VUniv(lp)
        case C.Lam() | C.FinLit() | C.Cons() | C.Holds():
            raise _fail("CannotInfer", "cannot infer a type here; add an annotation", t)
    raise _fail("CannotInfer", f"cannot infer a type for {type(t).__name__}", t)


def _equiv_ends(ctx: Context, ety: Value, e: C.Term) -> tuple[Value, Value]:
    if isinstance(ety, VSigma) and isinstance(ety.fst, VPi):
        f = ety.fst
        b = f.cod(vvar(ctx.lvl))
        if not C.mentions_var(quote(ctx.lvl + 1, ctx.ilvl, b), 0):
            return f.dom, f.cod(vvar(ctx.lvl))
    raise _fail("TypeMismatch", "ua expects an equivalence between two types", e,
                actual=ctx.show(ety), actual_term=ctx.quote(ety))


def _check_(ctx: Context, t: C.Term, ty: Value) -> C.Term:
    match t, ty:
        case C.Lam(name, body, dom), VPi(_, a, b):
            dom2 = None
            if dom is not None:
                dom2, _, _ = _elab_type(ctx, dom)
                if not conv(ctx.lvl, ctx.ilvl, ctx.eval(dom2), a):
                    raise _mismatch(ctx, dom, a, ctx.eval(dom2), "binder annotation disagrees with the expected domain")
            body2 = _check(ctx.bind(name, a), body, b(vvar(ctx.lvl)))
            return C.Lam(name, body2, dom2, span=t.span)
        case C.Pair(a, b), VSigma(_, fa, fb):
            a2 = _goal(ctx, a, fa)
            b2 = _goal(ctx, b, fb(ctx.eval(a2)))
            return C.Pair(a2, b2, span=t.span)
        case C.PLam(name, body), VPath(a, x, y):
            body2 = _check(ctx.bind_i(name), body, a)
            for end, r, want in (("0", ZERO, x), ("1", ONE, y)):
                got = eval_term(ctx.env.extend_i(r), body2)
                if not conv_at(ctx.lvl, ctx.ilvl, got, want, a):
                    raise _mismatch(ctx, t, want, got, f"path endpoint at {end} does not match")
            return C.PLam(name, body2, span=t.span)
        case C.FinLit(k), VFin(n):
            bound = nat_value_to_int(n)
            if bound is None or not 0 <= k < bound:
                raise _fail("TypeMismatch", f"#{k} is not an element of this finite type", t,
                            expected=ctx.show(ty), expected_term=ctx.quote(ty))
            return t
        case C.Const("nil"), VList():
            return t
        case C.Cons(h, tl), VList(a):
            return C.Cons(_check(ctx, h, a), _check(ctx, tl, ty), span=t.span)
        case C.Holds(f), VAbhava(p, _, _):
            neg = VPi("_", p, Closure(ctx.env, C.Const("Empty")))
            return C.Holds(_check(ctx, f, neg), span=t.span)
        case C.Let(name, lty, val, body), _:
            ty2, _, _ = _elab_type(ctx, lty)
            tv = ctx.eval(ty2)
            val2 = _check(ctx, val, tv)
            body2 = _check(ctx.define(name, tv, ctx.eval(val2)), body, ty)
            return C.Let(name, ty2, val2, body2, span=t.span)
        case C.FinCase(motive, scrut, branches), _:
            t2, got = _infer(ctx, t)
            if not subtype(ctx, got, ty):
                raise _mismatch(ctx, t, ty, got)
            return t2
        case (C.Lam(), _) | (C.Pair(), _) | (C.PLam(), _) | (C.FinLit(), _) | (C.Cons(), _) | (C.Holds(), _):
            what = {
                C.Lam: "a function", C.Pair: "a pair", C.PLam: "a path",
                C.FinLit: "a finite index", C.Cons: "a list", C.Holds: "an absence witness",
            }[type(t)]
            raise _fail("TypeMismatch", f"{what} cannot have this type", t,
                        expected=ctx.show(ty), expected_term=ctx.quote(ty))
        case C.Const("nil"), _:
            raise _fail("TypeMismatch", "nil is a list", t, expected=ctx.show(ty), expected_term=ctx.quote(ty))
    t2, got = _infer(ctx, t)
    if subtype(ctx, got, ty):
        return t2
    if isinstance(ty, VUniv) and isinstance(got, VUniv):
        # the syntactic level may overshoot; measure the normal form instead
        lv, tag = sort_of(ctx, ctx.eval(t2))
        if univ_leq(lv, tag, ty.level, ty.tag):
            return t2
    raise _mismatch(ctx, t, ty, got)


def _goal(ctx: Context, t: C.Term, ty: Value) -> C.Term:
    """Check a pair component, recording the goal on failure."""
    try:
        return _check(ctx, t, ty)
    except NNError as e:
        e.diagnostic.goals.append((ctx.names, ctx.inames, ctx.quote(ty)))
        raise


# -- public API ------------------------------------------------------------------

def infer(ctx: Context, t: C.Term) -> Value:
    return _infer(ctx, t)[1]


def check(ctx: Context, t: C.Term, ty: Value) -> None:
    _check(ctx, t, ty)


def elab_infer(ctx: Context, t: C.Term) -> tuple[C.Term, Value]:
    return _infer(ctx, t)


def elab_check(ctx: Context, t: C.Term, ty: Value) -> C.Term:
    return _check(ctx, t, ty)


def elab_type(ctx: Context, t: C.Term) -> tuple[C.Term, int, str | None]:
    try:
        return _elab_type(ctx, t)
    except NNError as e:
        raise _spanned(t, e)
    except FuelExhausted as e:
        raise _fail("FuelExhausted", str(e), t) from None

