"""Canonical spellings for built-in identifiers, universes and labels."""

from __future__ import annotations

import re
import unicodedata

from ..syntax import CATEGORIAL_TAGS

# name -> number of arguments the desugarer expects (0 for constants).
BUILTINS: dict[str, int] = {
    "Nat": 0, "zero": 0, "suc": 1,
    "Empty": 0, "absurd": 2,
    "Unit": 0, "tt": 0,
    "S1": 0, "base": 0, "loop": 0,
    "Fin": 1,
    "List": 1, "nil": 0, "cons": 2,
    "Pratyasatti": 0, "samyoga": 0, "samavaya": 0, "svarupa": 0, "tadatmya": 0,
    "parampara": 1,
    "Path": 3, "refl": 1, "sym": 1, "ua": 1,
    "Abhava": 3, "holds": 1,
    "fst": 1, "snd": 1,
}

LABELS = ("asiddha", "viruddha", "anaikantika", "badhita")

_SUBSCRIPT_DIGITS = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def fold(word: str) -> str:
    """Strip diacritics: ``Abhāva`` -> ``Abhava``, ``saṃyoga`` -> ``samyoga``."""
    decomposed = unicodedata.normalize("NFD", word)
    return "".join(c for c in decomposed if not unicodedata.category(c).startswith("M"))


def builtin(word: str) -> str | None:
    f = fold(word)
    return f if f in BUILTINS else None


_TYPE_RE = re.compile(r"Type([0-9]*)")


def universe(word: str) -> tuple[int, str | None] | None:
    """Recognize ``Type``, ``Type3``, ``Type₃``, ``U_dravya`` / ``U-guṇa``."""
    w = word.translate(_SUBSCRIPT_DIGITS)
    m = _TYPE_RE.fullmatch(w)
    if m:
        return (int(m.group(1)) if m.group(1) else 0, None)
    f = fold(word)
    if f.startswith(("U_", "U-")):
        tag = f[2:].lower()
        if tag in CATEGORIAL_TAGS:
            return (CATEGORIAL_TAGS[tag], tag)
    return None


def label(word: str) -> str | None:
    f = fold(word).lower()
    return f if f in LABELS else None
