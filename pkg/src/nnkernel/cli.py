"""Command-line entry point: check, eval, diagnose, corpus, fmt."""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import corpus as corpus_mod
from .diagnostics import Diagnostic, NNError
from .nbe import DEFAULT_FUEL, Globals
from .prelude import PreludeError, PreludeSnapshot, default_dir, load_prelude, prelude_member
from .session import ModuleReport, Session
from .surface.parser import parse_module
from .surface.pretty import module as pretty_module

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INTERNAL = 0, 1, 2, 3


def _positive(text: str) -> int:
    n = int(text)
    if n <= 0:
        raise argparse.ArgumentTypeError("fuel must be positive")
    return n


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--fuel", type=_positive, default=DEFAULT_FUEL, metavar="N",
                        help=f"evaluation step bound per declaration (default {DEFAULT_FUEL})")
    common.add_argument("--prelude", metavar="DIR", help="prelude directory (default: $NN_PRELUDE or bundled)")
    common.add_argument("--no-prelude", action="store_true", help="do not load the prelude")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="nnk", description="Type checker for .nn sources.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="elaborate files after the prelude")
    c.add_argument("files", nargs="+")
    c.add_argument("--jobs", type=int, default=1)
    e = sub.add_parser("eval", parents=[common], help="print the normal form of a definition")
    e.add_argument("file")
    e.add_argument("--term", required=True, metavar="NAME")
    d = sub.add_parser("diagnose", parents=[common], help="check and label failures with fallacies")
    d.add_argument("files", nargs="+")
    r = sub.add_parser("corpus", parents=[common], help="replay a corpus directory")
    r.add_argument("dir")
    r.add_argument("--jobs", type=int, default=1)
    f = sub.add_parser("fmt", parents=[common], help="pretty-print canonically")
    f.add_argument("files", nargs="+")
    return p


def exit_code(report: ModuleReport) -> int:
    if report.fatal is not None:
        if report.fatal.code in ("ParseError", "FileError"):
            return EXIT_PARSE
        if report.fatal.code in ("FuelExhausted", "InternalError"):
            return EXIT_INTERNAL
        return EXIT_FAIL
    return EXIT_OK if report.ok else EXIT_FAIL


class _Prelude:
    """Resolves the prelude once per run, trimming it when a prelude file is itself checked."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.dir = Path(args.prelude) if args.prelude else default_dir()

    def globals_for(self, path: str | None) -> Globals | None:
        if self.args.no_prelude:
            return None
        upto = prelude_member(path, self.dir) if path else None
        return load_prelude(self.dir, fuel=self.args.fuel, upto=upto).glob


def _read_error(path: str, err: OSError) -> ModuleReport:
    report = ModuleReport(path)
    report.fatal = Diagnostic("FileError", f"cannot read {path}: {err.strerror or err}")
    return report


def _check_one(path: str, prelude: _Prelude, args, enrich: bool) -> tuple[ModuleReport, Session | None]:
    try:
        glob = prelude.globals_for(path)
    except PreludeError as e:
        return e.report, None
    session = Session(glob, fuel=args.fuel, enrich=enrich)
    try:
        return session.check_file(path), session
    except OSError as e:
        return _read_error(path, e), None


def _report_json(report: ModuleReport, code: int) -> dict:
    return {
        "file": report.file,
        "ok": report.ok,
        "exit": code,
        "anchors": list(report.anchors),
        "results": [r.to_json() for r in report.results],
        "diagnostics": [d.to_json() for d in report.diagnostics()],
    }


def _report_text(report: ModuleReport, verbose: bool) -> str:
    lines = []
    for r in report.results:
        if verbose:
            mark = "ok " if r.ok else "BAD"
            extra = f" -> {r.observed}" if r.observed else ""
            detail = f" ({r.detail})" if r.detail and r.ok else ""
            lines.append(f"{mark} {r.kind} {r.name}{extra}{detail}")
        elif not r.ok and r.detail:
            lines.append(f"{r.name}: {r.detail}")
    lines.extend(d.render() for d in report.diagnostics())
    n = len(report.results)
    status = "OK" if report.ok else "FAILED"
    lines.append(f"{report.file}: {status} ({n - len(report.failures)}/{n} declarations as expected)")
    return "\n".join(lines)


def _cmd_check(args, enrich: bool = False) -> int:
    prelude = _Prelude(args)
    jobs = max(1, getattr(args, "jobs", 1))
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        outcomes = list(pool.map(lambda f: _check_one(f, prelude, args, enrich), args.files))
    code = EXIT_OK
    payload = []
    for report, _ in outcomes:
        c = exit_code(report)
        code = max(code, c)
        if args.json:
            payload.append(_report_json(report, c))
        else:
            print(_report_text(report, args.verbose))
    if args.json:
        print(json.dumps({"ok": code == EXIT_OK, "exit": code, "files": payload}, ensure_ascii=False, indent=2))
    return code


def _cmd_eval(args) -> int:
    report, session = _check_one(args.file, _Prelude(args), args, False)
    code = exit_code(report)
    nf = None
    if session is not None and report.fatal is None:
        nf = session.normal_form(args.term)
        if nf is None:
            report.fatal = Diagnostic("UnresolvedName", f"no definition named {args.term!r} in {args.file}")
            code = EXIT_FAIL
    if args.json:
        out = _report_json(report, code)
        out["term"] = args.term
        out["normal_form"] = nf
        print(json.dumps(out, ensure_ascii=False, indent=2))
    else:
        if nf is not None:
            print(nf)
        if code != EXIT_OK:
            print(_report_text(report, args.verbose), file=sys.stderr)
    return code


def _cmd_corpus(args) -> int:
    if not Path(args.dir).is_dir():
        d = Diagnostic("FileError", f"{args.dir} is not a directory")
        print(json.dumps({"ok": False, "diagnostics": [d.to_json()]}) if args.json else d.render())
        return EXIT_PARSE
    snap = PreludeSnapshot(Path("."), Globals(), {}, ())
    if not args.no_prelude:
        prelude_dir = Path(args.prelude) if args.prelude else default_dir()
        try:
            snap = load_prelude(prelude_dir, fuel=args.fuel)
        except PreludeError as e:
            for d in e.report.diagnostics():
                print(d.render())
            return exit_code(e.report) or EXIT_FAIL
    board = corpus_mod.run_corpus(args.dir, snap, fuel=args.fuel, jobs=max(1, args.jobs))
    if args.json:
        print(json.dumps(board.to_json(), ensure_ascii=False, indent=2))
    else:
        print(board.text(args.verbose))
    if board.ok:
        return EXIT_OK
    codes = [exit_code(e.report) for e in board.entries]
    return max([EXIT_FAIL, *codes])


def _cmd_fmt(args) -> int:
    code = EXIT_OK
    for path in args.files:
        try:
            text = Path(path).read_text(encoding="utf-8")
            print(pretty_module(parse_module(text, path)), end="")
        except OSError as e:
            print(_read_error(path, e).fatal.render(), file=sys.stderr)
            code = EXIT_PARSE
        except NNError as e:
            print(e.diagnostic.render(), file=sys.stderr)
            code = EXIT_PARSE
    return code


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.prelude is None and os.environ.get("NN_PRELUDE"):
        args.prelude = os.environ["NN_PRELUDE"]
    try:
        match args.command:
            case "check":
                return _cmd_check(args)
            case "diagnose":
                return _cmd_check(args, enrich=True)
            case "eval":
                return _cmd_eval(args)
            case "corpus":
                return _cmd_corpus(args)
            case "fmt":
                return _cmd_fmt(args)
    except RecursionError:
        d = Diagnostic("InternalError", "recursion limit reached while checking")
    except Exception as e:  # anything escaping the kernel is a bug, reported uniformly
        if args.verbose:
            traceback.print_exc()
        d = Diagnostic("InternalError", f"{type(e).__name__}: {e}")
    print(json.dumps({"ok": False, "exit": EXIT_INTERNAL, "diagnostics": [d.to_json()]})
          if args.json else d.render())
    return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
