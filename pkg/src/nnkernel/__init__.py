"""A small cubical type checker with a library for Navya-Nyaya logic."""

from .diagnostics import Diagnostic, NNError, Span
from .nbe import DEFAULT_FUEL, Globals
from .prelude import PreludeError, load_prelude
from .session import ModuleReport, Session

__all__ = [
    "DEFAULT_FUEL", "Diagnostic", "Globals", "ModuleReport", "NNError",
    "PreludeError", "Session", "Span", "load_prelude",
]
__version__ = "0.1.0"
