"""Tokenizer for ``.nn`` source text."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from ..diagnostics import Diagnostic, NNError, Span

# Multi-character symbols first so that longest match wins.
SYMBOLS = (
    "->", "=>", "/\\", "\\/",
    "→", "×", "λ", "¬",
    "(", ")", "{", "}", "<", ">", ",", ";", ":", "=", ".", "@", "~", "*", "\\", "#",
)
SYMBOL_ALIASES = {"→": "->", "×": "*", "λ": "\\"}

KEYWORDS = frozenset(
    {
        "postulate", "def", "check", "fail-check", "expecting", "model", "example",
        "paper", "let", "in", "transp", "fin-case",
    }
)

SUBSCRIPTS = "₀₁₂₃₄₅₆₇₈₉"


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT, NUMBER, STRING, SYM, KW, EOF
    text: str
    span: Span

    def __repr__(self) -> str:
        return f"{self.kind}:{self.text!r}"


def _ident_char(ch: str) -> bool:
    if ch == "λ":  # always the binder, so "λx" lexes as two tokens
        return False
    if ch.isalnum() or ch in "_'" or ch in SUBSCRIPTS:
        return True
    return unicodedata.category(ch).startswith("M")


def _ident_start(ch: str) -> bool:
    return (ch.isalpha() and ch != "λ") or ch == "_"


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    text = unicodedata.normalize("NFC", text)
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)

    def span(start: int, start_line: int, start_col: int, length: int) -> Span:
        return Span(file, start_line, start_col, length, start)

    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if text.startswith("--", i):
            while i < n and text[i] != "\n":
                i += 1
            continue
        start, sl, sc = i, line, col
        if _ident_start(ch):
            j = i + 1
            while j < n:
                c = text[j]
                if _ident_char(c):
                    j += 1
                elif c == "-" and j + 1 < n and _ident_char(text[j + 1]) and text[j + 1] not in "'":
                    j += 1
                else:
                    break
            word = text[i:j]
            kind = "KW" if word in KEYWORDS else "IDENT"
            tokens.append(Token(kind, word, span(start, sl, sc, j - i)))
            col += j - i
            i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("NUMBER", text[i:j], span(start, sl, sc, j - i)))
            col += j - i
            i = j
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"' and text[j] != "\n":
                j += 1
            if j >= n or text[j] != '"':
                raise NNError(Diagnostic("ParseError", "unterminated string literal", span(start, sl, sc, j - i)))
            tokens.append(Token("STRING", text[i + 1 : j], span(start, sl, sc, j + 1 - i)))
            col += j + 1 - i
            i = j + 1
            continue
        for sym in SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("SYM", SYMBOL_ALIASES.get(sym, sym), span(start, sl, sc, len(sym))))
                i += len(sym)
                col += len(sym)
                break
        else:
            raise NNError(Diagnostic("ParseError", f"unexpected character {ch!r}", span(start, sl, sc, 1)))
    tokens.append(Token("EOF", "", Span(file, line, col, 0, n)))
    return tokens
