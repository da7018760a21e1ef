"""Small helpers shared by the test modules."""

from __future__ import annotations

from nnkernel.nbe import budget, conv, quote
from nnkernel.session import Session
from nnkernel.surface import desugar as D
from nnkernel.surface.parser import parse_term
from nnkernel.surface.pretty import pretty
from nnkernel.typecheck import Context, elab_check, elab_infer, elab_type


def ctx_of(session: Session) -> Context:
    return Context(session.glob)


def core(session: Session, text: str):
    return D.term(parse_term(text), D.Scope(is_global=session.glob.__contains__))


def infer(session: Session, text: str, disabled=frozenset()):
    ctx = ctx_of(session)
    with budget(session.fuel, disabled):
        return elab_infer(ctx, core(session, text))


def value(session: Session, text: str, disabled=frozenset()):
    ctx = ctx_of(session)
    with budget(session.fuel, disabled):
        t, _ = elab_infer(ctx, core(session, text))
        return ctx.eval(t)


def nf(session: Session, text: str, disabled=frozenset()) -> str:
    ctx = ctx_of(session)
    with budget(session.fuel, disabled):
        t, _ = elab_infer(ctx, core(session, text))
        return pretty(quote(0, 0, ctx.eval(t)))


def checks(session: Session, term: str, ty: str, disabled=frozenset()):
    """Elaborate ``term : ty``; returns None on success or the diagnostic."""
    from nnkernel.diagnostics import NNError

    ctx = ctx_of(session)
    try:
        with budget(session.fuel, disabled):
            t2, _, _ = elab_type(ctx, core(session, ty))
            elab_check(ctx, core(session, term), ctx.eval(t2))
    except NNError as e:
        return e.diagnostic
    return None


def convertible(session: Session, a: str, b: str, disabled=frozenset()) -> bool:
    with budget(session.fuel, disabled):
        return conv(0, 0, value(session, a, disabled), value(session, b, disabled))


def declare(session: Session, text: str) -> None:
    report = session.check_text(text)
    assert report.ok, [d.render() for d in report.diagnostics()]
