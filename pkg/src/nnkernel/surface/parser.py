"""Recursive-descent parser producing :mod:`nnkernel.surface.ast` trees."""

from __future__ import annotations

from ..diagnostics import Diagnostic, NNError, Span
from ..interval import IJoin, IMeet, INeg, IOne, IVar, IZero
from . import ast as A
from .lexer import Token, tokenize
from .names import builtin, label, universe


class Parser:
    def __init__(self, tokens: list[Token]):
        self.toks = tokens
        self.pos = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.toks[min(self.pos + k, len(self.toks) - 1)]

    def at(self, kind: str, text: str | None = None) -> bool:
        t = self.tok
        return t.kind == kind and (text is None or t.text == text)

    def at_sym(self, text: str) -> bool:
        return self.at("SYM", text)

    def advance(self) -> Token:
        t = self.tok
        if t.kind != "EOF":
            self.pos += 1
        return t

    def error(self, msg: str, tok: Token | None = None) -> NNError:
        tok = tok or self.tok
        found = "end of input" if tok.kind == "EOF" else repr(tok.text)
        return NNError(Diagnostic("ParseError", f"{msg}, found {found}", tok.span))

    def expect_sym(self, text: str) -> Token:
        if not self.at_sym(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def expect_kw(self, text: str) -> Token:
        if not self.at("KW", text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def ident(self, what: str = "identifier") -> Token:
        if not self.at("IDENT"):
            raise self.error(f"expected {what}")
        return self.advance()

    def binder_name(self) -> str:
        t = self.ident("binder name")
        if builtin(t.text) or universe(t.text):
            raise self.error("a built-in name cannot be rebound", t)
        return t.text

    def span_from(self, start: Token) -> Span:
        prev = self.toks[self.pos - 1] if self.pos > 0 else start
        end = prev.span.offset + prev.span.length
        return Span(start.span.file, start.span.line, start.span.col, max(end - start.span.offset, 0), start.span.offset)

    def adjacent(self) -> bool:
        """Is the current token glued to the previous one (no whitespace)?"""
        if self.pos == 0:
            return False
        prev = self.toks[self.pos - 1]
        return prev.span.offset + prev.span.length == self.tok.span.offset

    # -- modules -------------------------------------------------------------

    def module(self) -> A.SourceModule:
        start = self.tok
        decls = []
        while not self.at("EOF"):
            decls.append(self.decl())
        return A.SourceModule(tuple(decls), span=self.span_from(start))

    def decl(self) -> A.Node:
        start = self.tok
        if self.at("KW", "postulate"):
            self.advance()
            name = self.binder_name()
            params = self.param_groups()
            self.expect_sym(":")
            ty = self.expr()
            return A.Postulate(name, params, ty, span=self.span_from(start))
        if self.at("KW", "def"):
            self.advance()
            name = self.binder_name()
            params = self.param_groups()
            self.expect_sym(":")
            ty = self.expr()
            self.expect_sym("=")
            body = self.expr()
            return A.Def(name, params, ty, body, span=self.span_from(start))
        if self.at("KW", "check"):
            self.advance()
            term = self.expr()
            self.expect_sym(":")
            ty = self.expr()
            return A.Check(term, ty, span=self.span_from(start))
        if self.at("KW", "fail-check"):
            self.advance()
            term = self.expr()
            self.expect_sym(":")
            ty = self.expr()
            self.expect_kw("expecting")
            code = self.ident("diagnostic code").text
            lab = None
            if self.at("IDENT") and label(self.tok.text):
                lab = label(self.advance().text)
            return A.FailCheck(term, ty, code, lab, span=self.span_from(start))
        if self.at("KW", "model"):
            self.advance()
            name = self.ident("model name").text
            self.expect_sym("{")
            items = []
            while not self.at_sym("}"):
                items.append(self.model_item())
                if self.at_sym(";"):
                    self.advance()
                elif not self.at_sym("}"):
                    raise self.error("expected ';' or '}' after model item")
            self.expect_sym("}")
            return A.Model(name, tuple(items), span=self.span_from(start))
        if self.at("KW", "example"):
            self.advance()
            name = self.ident("example name").text
            self.expect_kw("paper")
            if not self.at("STRING"):
                raise self.error("expected an anchor string")
            anchor = self.advance().text
            self.expect_sym("{")
            decls = []
            while not self.at_sym("}"):
                if self.at("EOF"):
                    raise self.error("unterminated example block")
                decls.append(self.decl())
            self.expect_sym("}")
            return A.Example(name, anchor, tuple(decls), span=self.span_from(start))
        raise self.error("expected a declaration")

    def param_groups(self) -> tuple[A.Group, ...]:
        groups = []
        while self.at_sym("("):
            groups.append(self.typed_group())
        return tuple(groups)

    def typed_group(self) -> A.Group:
        start = self.expect_sym("(")
        names = [self.binder_name()]
        while self.at("IDENT"):
            names.append(self.binder_name())
        self.expect_sym(":")
        ty = self.expr()
        self.expect_sym(")")
        return A.Group(tuple(names), ty, span=self.span_from(start))

    # -- model items ---------------------------------------------------------

    def name_set(self) -> tuple[str, ...]:
        self.expect_sym("{")
        out = []
        while not self.at_sym("}"):
            out.append(self.ident("name").text)
            if self.at_sym(","):
                self.advance()
        self.expect_sym("}")
        return tuple(out)

    def model_item(self) -> A.Node:
        start = self.tok
        word = self.ident("model item").text
        if word == "loci":
            self.expect_sym(":")
            names = []
            while self.at("IDENT"):
                names.append(self.advance().text)
            return A.MLoci(tuple(names), span=self.span_from(start))
        if word == "pred":
            name = self.ident("predicate name").text
            self.expect_sym("=")
            return A.MPred(name, self.name_set(), span=self.span_from(start))
        if word == "paksa":
            return A.MPaksa(self.ident("locus").text, span=self.span_from(start))
        if word == "observed-absent":
            pred = self.ident("predicate name").text
            if not (self.at("IDENT", "at")):
                raise self.error("expected 'at'")
            self.advance()
            return A.MObservedAbsent(pred, self.ident("locus").text, span=self.span_from(start))
        if word == "inheres":
            locus = self.ident("locus").text
            self.expect_sym("=")
            return A.MInheres(locus, self.name_set(), span=self.span_from(start))
        if word == "expect":
            kind = self.ident("'vyapti' or 'paryapti'").text
            if kind == "vyapti":
                h = self.ident("predicate name").text
                s = self.ident("predicate name").text
                self.expect_sym("=>")
                verdict = [self.ident("verdict").text]
                while self.at("IDENT"):
                    verdict.append(self.advance().text)
                return A.MExpectVyapti(h, s, tuple(verdict), span=self.span_from(start))
            if kind == "paryapti":
                locus = self.ident("locus").text
                if not self.at("NUMBER"):
                    raise self.error("expected a count")
                n = int(self.advance().text)
                self.expect_sym("=>")
                verdict = self.ident("'valid' or 'invalid'").text
                return A.MExpectParyapti(locus, n, verdict, span=self.span_from(start))
            raise self.error("expected 'vyapti' or 'paryapti'", self.toks[self.pos - 1])
        raise self.error("unknown model item", self.toks[self.pos - 1])

    # -- terms ---------------------------------------------------------------

    def expr(self) -> A.Node:
        start = self.tok
        if self.at_sym("\\"):
            self.advance()
            binders = []
            while not self.at_sym("."):
                if self.at_sym("("):
                    binders.append(self.typed_group())
                else:
                    t = self.tok
                    binders.append(A.Group((self.binder_name(),), None, span=t.span))
            if not binders:
                raise self.error("expected a binder")
            self.expect_sym(".")
            body = self.expr()
            return A.SLam(tuple(binders), body, span=self.span_from(start))
        if self.at_sym("<"):
            self.advance()
            names = []
            while not self.at_sym(">"):
                names.append(self.binder_name())
            if not names:
                raise self.error("expected an interval variable")
            self.advance()
            body = self.expr()
            return A.SPLam(tuple(names), body, span=self.span_from(start))
        if self.at("KW", "let"):
            self.advance()
            name = self.binder_name()
            self.expect_sym(":")
            ty = self.expr()
            self.expect_sym("=")
            val = self.expr()
            self.expect_kw("in")
            body = self.expr()
            return A.SLet(name, ty, val, body, span=self.span_from(start))
        telescope = self.try_telescope()
        if telescope is not None:
            groups, op = telescope
            body = self.expr()
            cls = A.SPi if op == "->" else A.SSigma
            return cls(groups, body, span=self.span_from(start))
        return self.arrow()

    def try_telescope(self):
        """``(x : A) (y : B) ->`` or ``... *``; restores position if absent."""
        if not self.at_sym("("):
            return None
        save = self.pos
        groups = []
        try:
            while self.at_sym("(") and self.peek().kind == "IDENT":
                j = self.pos + 1
                while self.toks[j].kind == "IDENT":
                    j += 1
                if not (self.toks[j].kind == "SYM" and self.toks[j].text == ":"):
                    break
                groups.append(self.typed_group())
        except NNError:
            self.pos = save
            return None
        if groups and (self.at_sym("->") or self.at_sym("*")):
            return tuple(groups), self.advance().text
        self.pos = save
        return None

    def arrow(self) -> A.Node:
        start = self.tok
        left = self.prod()
        if self.at_sym("->"):
            self.advance()
            right = self.expr()
            return A.SArrow(left, right, span=self.span_from(start))
        return left

    def prod(self) -> A.Node:
        start = self.tok
        left = self.app()
        if self.at_sym("*"):
            self.advance()
            telescope = self.try_telescope()
            if telescope is not None:
                groups, op = telescope
                body = self.expr()
                cls = A.SPi if op == "->" else A.SSigma
                right = cls(groups, body, span=self.span_from(start))
            else:
                right = self.prod()
            return A.SProd(left, right, span=self.span_from(start))
        return left

    def starts_atom(self) -> bool:
        t = self.tok
        if t.kind in ("IDENT", "NUMBER"):
            return True
        return t.kind == "SYM" and t.text in ("(", "#")

    def app(self) -> A.Node:
        start = self.tok
        if self.at("KW", "transp"):
            self.advance()
            line = self.postfix()
            r = self.iatom()
            arg = self.postfix()
            t: A.Node = A.STransp(line, r, arg, span=self.span_from(start))
        elif self.at("KW", "fin-case"):
            self.advance()
            ty = self.postfix()
            scrut = self.postfix()
            self.expect_sym("{")
            branches = [self.expr()]
            while self.at_sym(";"):
                self.advance()
                branches.append(self.expr())
            self.expect_sym("}")
            t = A.SFinCase(ty, scrut, tuple(branches), span=self.span_from(start))
        else:
            t = self.postfix()
        while True:
            if self.at_sym("@"):
                self.advance()
                r = self.iatom()
                t = A.SPApp(t, r, span=self.span_from(start))
            elif self.starts_atom():
                arg = self.postfix()
                t = A.SApp(t, arg, span=self.span_from(start))
            else:
                return t

    def postfix(self) -> A.Node:
        start = self.tok
        t = self.atom()
        while self.at_sym(".") and self.adjacent():
            nxt = self.peek()
            if nxt.kind == "NUMBER" and nxt.text in ("1", "2"):
                spelling = nxt.text
            elif nxt.kind == "IDENT" and nxt.text in ("fst", "snd"):
                spelling = nxt.text
            else:
                break
            self.advance()
            self.advance()
            which = 1 if spelling in ("1", "fst") else 2
            t = A.SProj(t, which, spelling, span=self.span_from(start))
        return t

    def atom(self) -> A.Node:
        start = self.tok
        if self.at("IDENT"):
            word = self.advance().text
            u = universe(word)
            if u is not None:
                return A.SUniv(u[0], u[1], span=start.span)
            b = builtin(word)
            if b is not None:
                return A.SConst(b, span=start.span)
            return A.SVar(word, span=start.span)
        if self.at("NUMBER"):
            return A.SNum(int(self.advance().text), span=start.span)
        if self.at_sym("#"):
            self.advance()
            if not (self.at("NUMBER") and self.adjacent()):
                raise self.error("expected a literal index after '#'")
            return A.SFinLit(int(self.advance().text), span=self.span_from(start))
        if self.at_sym("("):
            self.advance()
            inner = self.expr()
            if self.at_sym(":"):
                self.advance()
                ty = self.expr()
                self.expect_sym(")")
                return A.SAnn(inner, ty, span=self.span_from(start))
            if self.at_sym(","):
                items = [inner]
                while self.at_sym(","):
                    self.advance()
                    items.append(self.expr())
                self.expect_sym(")")
                out = items[-1]
                for it in reversed(items[:-1]):
                    out = A.SPair(it, out, span=self.span_from(start))
                return out
            self.expect_sym(")")
            return inner
        raise self.error("expected a term")

    # -- interval expressions ------------------------------------------------

    def iexpr(self):
        left = self.imeet()
        while self.at_sym("\\/"):
            self.advance()
            left = IJoin(left, self.imeet())
        return left

    def imeet(self):
        left = self.iatom()
        while self.at_sym("/\\"):
            self.advance()
            left = IMeet(left, self.iatom())
        return left

    def iatom(self):
        if self.at_sym("~") or self.at_sym("¬"):
            self.advance()
            return INeg(self.iatom())
        if self.at("NUMBER") and self.tok.text in ("0", "1"):
            return IZero() if self.advance().text == "0" else IOne()
        if self.at("IDENT"):
            return IVar(self.advance().text)
        if self.at_sym("("):
            self.advance()
            r = self.iexpr()
            self.expect_sym(")")
            return r
        raise self.error("expected an interval expression")


def parse_module(text: str, file: str = "<input>") -> A.SourceModule:
    return Parser(tokenize(text, file)).module()


def parse_term(text: str, file: str = "<input>") -> A.Node:
    p = Parser(tokenize(text, file))
    t = p.expr()
    if not p.at("EOF"):
        raise p.error("unexpected trailing input")
    return t


def parse(text: str, file: str = "<input>") -> A.SourceModule:
    return parse_module(text, file)
