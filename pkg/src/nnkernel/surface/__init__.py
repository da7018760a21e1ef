"""Concrete syntax: lexing, parsing, printing and desugaring."""

from .parser import parse, parse_module, parse_term
from .pretty import pretty, resugar

__all__ = ["parse", "parse_module", "parse_term", "pretty", "resugar"]
