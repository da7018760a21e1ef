"""Replaying the regression corpus and reporting a scoreboard."""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .diagnostics import Diagnostic
from .nbe import DEFAULT_FUEL, Globals
from .prelude import PreludeSnapshot, load_prelude
from .session import ModuleReport, Session

SECTIONS = ("pratyaksa", "anumana", "upamana", "sabda", "commentary")

# Every worked example must be present exactly once.
REQUIRED_ANCHORS = (
    "13.1.1", "13.1.2", "13.1.3",
    "13.2.1", "13.2.2", "13.2.3",
    "13.3.1", "13.3.2",
    "13.4.1", "13.4.2", "13.4.3",
    "13.5.1", "13.5.2", "13.5.3",
)


@dataclass
class EntryResult:
    file: str
    report: ModuleReport
    seconds: float

    @property
    def ok(self) -> bool:
        return self.report.ok

    @property
    def anchors(self) -> list[str]:
        return self.report.anchors

    def verdicts(self) -> tuple:
        """Per-declaration outcomes, independent of timing and message wording."""
        out = [(r.kind, r.name, r.ok, r.observed) for r in self.report.results]
        if self.report.fatal is not None:
            out.append(("fatal", self.report.fatal.code, False, None))
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "file": self.file,
            "ok": self.ok,
            "anchors": list(self.anchors),
            "seconds": round(self.seconds, 4),
            "results": [r.to_json() for r in self.report.results],
            "diagnostics": [d.to_json() for d in self.report.diagnostics()],
        }


@dataclass
class Scoreboard:
    root: str
    entries: list[EntryResult] = field(default_factory=list)
    problems: list[Diagnostic] = field(default_factory=list)  # missing or duplicated anchors
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.problems and all(e.ok for e in self.entries)

    @property
    def passed(self) -> int:
        return sum(e.ok for e in self.entries)

    def entry(self, anchor: str) -> EntryResult | None:
        for e in self.entries:
            if anchor in e.anchors:
                return e
        return None

    def verdicts(self) -> dict[str, tuple]:
        return {e.file: e.verdicts() for e in self.entries}

    def text(self, verbose: bool = False) -> str:
        lines = []
        for e in self.entries:
            tag = "PASS" if e.ok else "FAIL"
            anchors = f" [{', '.join(e.anchors)}]" if e.anchors else ""
            lines.append(f"{tag} {e.file}{anchors} ({len(e.report.results)} decls, {e.seconds:.3f}s)")
            if verbose or not e.ok:
                for r in e.report.results:
                    if verbose or not r.ok:
                        mark = "ok " if r.ok else "BAD"
                        extra = f" -> {r.observed}" if r.observed else ""
                        lines.append(f"    {mark} {r.kind} {r.name}{extra}")
                for d in e.report.diagnostics():
                    lines.append("    " + d.render())
        for d in self.problems:
            lines.append(d.render())
        lines.append(f"{self.passed}/{len(self.entries)} files passed in {self.seconds:.2f}s"
                     + ("" if not self.problems else f", {len(self.problems)} corpus problems"))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "root": self.root,
            "ok": self.ok,
            "passed": self.passed,
            "total": len(self.entries),
            "seconds": round(self.seconds, 4),
            "entries": [e.to_json() for e in self.entries],
            "diagnostics": [d.to_json() for d in self.problems],
        }


def discover(root: Path | str) -> list[Path]:
    return sorted(Path(root).rglob("*.nn"))


def run_file(path: Path | str, prelude: Globals | None, fuel: int = DEFAULT_FUEL,
             disabled: frozenset | set = frozenset()) -> EntryResult:
    start = time.perf_counter()
    session = Session(prelude, fuel=fuel, disabled=disabled)
    try:
        report = session.check_file(path)
    except OSError as e:
        report = ModuleReport(str(path))
        report.fatal = Diagnostic("FileError", f"cannot read {path}: {e.strerror}")
    return EntryResult(str(path), report, time.perf_counter() - start)


def run_corpus(root: Path | str, snapshot: PreludeSnapshot | None = None, fuel: int = DEFAULT_FUEL,
               disabled: frozenset | set = frozenset(), jobs: int = 1,
               required: tuple[str, ...] = REQUIRED_ANCHORS) -> Scoreboard:
    """Check every ``.nn`` file under ``root``, one fresh session per file."""
    start = time.perf_counter()
    if snapshot is None:
        snapshot = load_prelude(fuel=fuel)
    files = discover(root)
    board = Scoreboard(str(root))

    def one(p: Path) -> EntryResult:
        return run_file(p, snapshot.glob, fuel, disabled)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            board.entries = list(pool.map(one, files))
    else:
        board.entries = [one(p) for p in files]

    seen: dict[str, list[str]] = {}
    for e in board.entries:
        for a in e.anchors:
            seen.setdefault(a, []).append(e.file)
    for a in required:
        if a not in seen:
            board.problems.append(Diagnostic("MissingEntry", f"no corpus file carries example {a}"))
        elif len(seen[a]) > 1:
            board.problems.append(Diagnostic(
                "DuplicateName", f"example {a} appears in several files: {', '.join(seen[a])}"))
    board.seconds = time.perf_counter() - start
    return board
