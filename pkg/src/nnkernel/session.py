"""Elaborating whole modules: declarations, expected failures, models and example blocks."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from . import models
from . import syntax as C
from .diagnostics import Diagnostic, NNError
from .nbe import DEFAULT_FUEL, FuelExhausted, GlobalEntry, Globals, budget, quote
from .surface import ast as A
from .surface import desugar as D
from .surface.parser import parse_module
from .surface.pretty import pretty
from .typecheck import Context, elab_check, elab_type


@dataclass
class DeclResult:
    kind: str  # postulate, def, check, fail-check, vyapti, paryapti
    name: str
    ok: bool
    diagnostic: Diagnostic | None = None
    detail: str = ""
    anchor: str | None = None
    expected: str | None = None  # expected outcome, e.g. "TypeMismatch" or "viruddha"
    observed: str | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind, "name": self.name, "ok": self.ok}
        if self.anchor:
            out["anchor"] = self.anchor
        if self.expected:
            out["expected"] = self.expected
        if self.observed:
            out["observed"] = self.observed
        if self.detail:
            out["detail"] = self.detail
        if self.diagnostic is not None:
            out["diagnostic"] = self.diagnostic.to_json()
        return out


@dataclass
class ModuleReport:
    file: str
    results: list[DeclResult] = field(default_factory=list)
    anchors: list[str] = field(default_factory=list)
    fatal: Diagnostic | None = None  # parse error or fuel exhaustion

    @property
    def ok(self) -> bool:
        return self.fatal is None and all(r.ok for r in self.results)

    @property
    def failures(self) -> list[DeclResult]:
        return [r for r in self.results if not r.ok]

    def diagnostics(self) -> list[Diagnostic]:
        out = [] if self.fatal is None else [self.fatal]
        out.extend(r.diagnostic for r in self.failures if r.diagnostic is not None)
        return out


class Session:
    """One elaboration session: a global table layered over an optional prelude."""

    def __init__(self, prelude: Globals | None = None, fuel: int = DEFAULT_FUEL,
                 disabled: frozenset | set = frozenset(), enrich: bool = False):
        self.glob = Globals(parent=prelude)
        # label ordinary failed checks with a fallacy where the pattern fits
        self.enrich = enrich
        self.fuel = fuel
        self.disabled = frozenset(disabled)
        # example-local definitions, retrievable by name after their block closes
        self.local: dict[str, GlobalEntry] = {}

    # -- entry points --------------------------------------------------------

    def check_file(self, path: str | Path) -> ModuleReport:
        p = Path(path)
        return self.check_text(p.read_text(encoding="utf-8"), str(path))

    def check_text(self, text: str, file: str = "<input>") -> ModuleReport:
        report = ModuleReport(file)
        try:
            module = parse_module(text, file)
        except NNError as e:
            report.fatal = e.diagnostic
            return report
        self.check_module(module, report)
        return report

    def check_module(self, module: A.SourceModule, report: ModuleReport) -> ModuleReport:
        names: set[str] = set()
        for d in module.decls:
            self._decl(d, self.glob, report, names, None)
            if report.fatal is not None:
                break
        return report

    def lookup(self, name: str) -> GlobalEntry | None:
        return self.glob.lookup(name) or self.local.get(name)

    def normal_form(self, name: str) -> str | None:
        entry = self.lookup(name)
        if entry is None:
            return None
        if entry.value is None:
            return name
        with budget(self.fuel, self.disabled):
            return pretty(quote(0, 0, entry.value))

    # -- declarations --------------------------------------------------------

    def _scope(self, glob: Globals) -> D.Scope:
        return D.Scope(is_global=glob.__contains__)

    def _decl(self, d: A.Node, glob: Globals, report: ModuleReport, names: set[str], anchor: str | None) -> None:
        try:
            with budget(self.fuel, self.disabled):
                self._decl_inner(d, glob, report, names, anchor)
        except FuelExhausted as e:
            report.fatal = Diagnostic("FuelExhausted", str(e), d.span)
        except NNError as e:
            if e.diagnostic.code == "FuelExhausted":
                report.fatal = e.diagnostic
            else:
                if e.diagnostic.span is None:
                    e.diagnostic.span = d.span
                report.results.append(
                    DeclResult(_kind(d), _name(d), False, e.diagnostic, anchor=anchor,
                               observed=e.diagnostic.code)
                )

    def _claim(self, name: str, glob: Globals, names: set[str], node: A.Node) -> None:
        if name in names or name in glob:
            raise NNError(Diagnostic("DuplicateName", f"{name!r} is already declared", node.span))
        names.add(name)

    def _decl_inner(self, d: A.Node, glob: Globals, report: ModuleReport, names: set[str], anchor: str | None) -> None:
        ctx = Context(glob)
        scope = self._scope(glob)
        match d:
            case A.Postulate(name, params, ty):
                self._claim(name, glob, names, d)
                ty_core = D.term(A.SPi(params, ty, span=ty.span) if params else ty, scope)
                ty2, _, _ = elab_type(ctx, ty_core)
                glob.define(GlobalEntry(name, ctx.eval(ty2), ty2))
                report.results.append(DeclResult("postulate", name, True, anchor=anchor))
            case A.Def(name, params, ty, body):
                self._claim(name, glob, names, d)
                ty_core = D.term(A.SPi(params, ty, span=ty.span) if params else ty, scope)
                body_core = D.term(A.SLam(params, body, span=body.span) if params else body, scope)
                ty2, _, _ = elab_type(ctx, ty_core)
                tv = ctx.eval(ty2)
                body2 = self._checked(ctx, body_core, tv, ty2)
                glob.define(GlobalEntry(name, tv, ty2, ctx.eval(body2), body2))
                report.results.append(DeclResult("def", name, True, anchor=anchor))
            case A.Check(term, ty):
                ty2, _, _ = elab_type(ctx, D.term(ty, scope))
                self._checked(ctx, D.term(term, scope), ctx.eval(ty2), ty2)
                report.results.append(DeclResult("check", _name(d), True, anchor=anchor))
            case A.FailCheck(term, ty, code, lab):
                report.results.append(self._fail_check(ctx, scope, d, anchor))
            case A.Model(name, _):
                self._claim(name, glob, names, d)
                self._model(d, report, anchor)
            case A.Example(name, ex_anchor, decls):
                self._claim(name, glob, names, d)
                report.anchors.append(ex_anchor)
                inner = Globals(parent=glob)
                for x in decls:
                    self._decl(x, inner, report, names, ex_anchor)
                    if report.fatal is not None:
                        return
                self.local.update(inner.entries)
            case _:
                raise TypeError(f"unknown declaration {d!r}")

    def _checked(self, ctx: Context, term: C.Term, ty, goal: C.Term) -> C.Term:
        try:
            return elab_check(ctx, term, ty)
        except NNError as e:
            if self.enrich:
                while isinstance(goal, C.Pi):
                    goal = goal.cod  # a definition's parameters
                models.diagnose(e.diagnostic, goal)
            raise

    def _fail_check(self, ctx: Context, scope: D.Scope, d: A.FailCheck, anchor: str | None) -> DeclResult:
        expected = d.code + (f" {d.label}" if d.label else "")
        goal = None
        try:
            goal = D.term(d.ty, scope)
            ty2, _, _ = elab_type(ctx, goal)
            elab_check(ctx, D.term(d.term, scope), ctx.eval(ty2))
        except NNError as e:
            diag = e.diagnostic
            if diag.code == "FuelExhausted":
                raise
            if diag.span is None:
                diag.span = d.span
            models.diagnose(diag, goal)
            observed = diag.code + (f" {diag.hetvabhasa}" if diag.hetvabhasa else "")
            ok = diag.code == d.code and (d.label is None or diag.hetvabhasa == d.label)
            return DeclResult("fail-check", _name(d), ok, diag, anchor=anchor,
                              expected=expected, observed=observed,
                              detail="" if ok else f"expected {expected}, got {observed}")
        diag = Diagnostic("TypeMismatch", f"expected failure {expected}, but the term checks", d.span)
        return DeclResult("fail-check", _name(d), False, diag, anchor=anchor,
                          expected=expected, observed="success",
                          detail=f"expected {expected}, but the term checks")

    def _model(self, d: A.Model, report: ModuleReport, anchor: str | None) -> None:
        m = models.build_model(d)
        for it in d.items:
            if isinstance(it, A.MExpectVyapti):
                name = f"{d.name}: vyapti {it.hetu} {it.sadhya}"
                try:
                    v = models.check_vyapti(m, it.hetu, it.sadhya)
                except NNError as e:
                    e.diagnostic.span = e.diagnostic.span or it.span
                    report.results.append(DeclResult("vyapti", name, False, e.diagnostic, anchor=anchor))
                    continue
                ok = models.verdict_matches(v, it.verdict)
                exp = " ".join(models.normalize_verdict(it.verdict))
                diag = None if ok else Diagnostic(
                    "ExpectationFailed", f"expected {exp}, got {v.describe()}", it.span)
                report.results.append(DeclResult("vyapti", name, ok, diag, detail=v.describe(), anchor=anchor,
                                                 expected=exp, observed=" ".join(v.key())))
            elif isinstance(it, A.MExpectParyapti):
                name = f"{d.name}: paryapti {it.locus} {it.n}"
                try:
                    pv = models.paryapti_check(m, it.locus, it.n)
                except NNError as e:
                    e.diagnostic.span = e.diagnostic.span or it.span
                    report.results.append(DeclResult("paryapti", name, False, e.diagnostic, anchor=anchor))
                    continue
                observed = "valid" if pv.valid else "invalid"
                ok = observed == it.verdict
                diag = None if ok else Diagnostic(
                    "ExpectationFailed", f"expected {it.verdict}, got {pv.describe()}", it.span)
                report.results.append(DeclResult("paryapti", name, ok, diag, detail=pv.describe(), anchor=anchor,
                                                 expected=it.verdict, observed=observed))


def _kind(d: A.Node) -> str:
    return {
        A.Postulate: "postulate", A.Def: "def", A.Check: "check", A.FailCheck: "fail-check",
        A.Model: "model", A.Example: "example",
    }.get(type(d), "decl")


def _name(d: A.Node) -> str:
    name = getattr(d, "name", None)
    if name:
        return name
    if d.span is not None:
        return f"{_kind(d)}@{d.span.line}"
    return _kind(d)


def check_term_text(session: Session, term_text: str, type_text: str) -> C.Term:
    """Convenience for tests: elaborate ``term : type`` in the session's globals."""
    from .surface.parser import parse_term

    ctx = Context(session.glob)
    scope = D.Scope(is_global=session.glob.__contains__)
    with budget(session.fuel, session.disabled):
        ty2, _, _ = elab_type(ctx, D.term(parse_term(type_text), scope))
        return elab_check(ctx, D.term(parse_term(term_text), scope), ctx.eval(ty2))
