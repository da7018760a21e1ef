"""Loading the standard library shipped as ``.nn`` sources."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

from .diagnostics import Diagnostic, NNError
from .nbe import DEFAULT_FUEL, GlobalEntry, Globals
from .session import ModuleReport, Session

PRELUDE_ORDER = (
    "padartha", "sambandha", "avacchedaka", "abhava",
    "vyapti", "tadatmya", "paryapti", "visesana",
)

PACKAGE_PRELUDE = Path(__file__).with_name("prelude")


class PreludeError(Exception):
    def __init__(self, file: str, report: ModuleReport):
        diags = report.diagnostics()
        first = diags[0].render() if diags else "unknown failure"
        super().__init__(f"prelude file {file} failed to load:\n{first}")
        self.file = file
        self.report = report


@dataclass
class PreludeSnapshot:
    directory: Path
    glob: Globals
    local: dict[str, GlobalEntry]
    files: tuple[Path, ...]


def default_dir() -> Path:
    env = os.environ.get("NN_PRELUDE")
    return Path(env) if env else PACKAGE_PRELUDE


def prelude_files(directory: Path | str | None = None, upto: str | None = None) -> list[Path]:
    d = Path(directory) if directory is not None else default_dir()
    out = []
    for name in PRELUDE_ORDER:
        if name == upto:
            break
        out.append(d / f"{name}.nn")
    return out


_CACHE: dict[tuple, PreludeSnapshot] = {}


def load_prelude(directory: Path | str | None = None, fuel: int = DEFAULT_FUEL,
                 upto: str | None = None, order: tuple[str, ...] | None = None) -> PreludeSnapshot:
    """Elaborate the prelude files in order; the result is shared and must not be mutated."""
    d = (Path(directory) if directory is not None else default_dir()).resolve()
    names = order or PRELUDE_ORDER
    if upto is not None:
        names = names[: names.index(upto)]
    key = (d, fuel, tuple(names), tuple(os.path.getmtime(d / f"{n}.nn") for n in names if (d / f"{n}.nn").exists()))
    if order is None and key in _CACHE:
        return _CACHE[key]
    session = Session(fuel=fuel)
    files = []
    for name in names:
        path = d / f"{name}.nn"
        try:
            report = session.check_file(path)
        except OSError as e:
            report = ModuleReport(str(path))
            report.fatal = Diagnostic("FileError", f"cannot read prelude file {path}: {e.strerror or e}")
            raise PreludeError(str(path), report) from e
        if not report.ok:
            raise PreludeError(str(path), report)
        files.append(path)
    snap = PreludeSnapshot(d, session.glob, session.local, tuple(files))
    if order is None:
        _CACHE[key] = snap
    return snap


def prelude_member(path: Path | str, directory: Path | str | None = None) -> str | None:
    """If ``path`` is one of the prelude sources, return its module name."""
    d = (Path(directory) if directory is not None else default_dir()).resolve()
    p = Path(path).resolve()
    if p.parent == d and p.stem in PRELUDE_ORDER and p.suffix == ".nn":
        return p.stem
    return None


__all__ = ["PRELUDE_ORDER", "PreludeError", "PreludeSnapshot", "load_prelude", "prelude_member", "NNError"]
