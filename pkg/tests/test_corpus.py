import json

import pytest

from nnkernel import corpus
from nnkernel.nbe import DEFAULT_FUEL, RULES
from nnkernel.session import Session


@pytest.fixture(scope="module")
def board(snapshot, root):
    return corpus.run_corpus(root / "corpus", snapshot)


def test_all_entries_pass(board):
    assert board.ok, board.text()
    assert {a for e in board.entries for a in e.anchors} >= set(corpus.REQUIRED_ANCHORS)


def test_inferred_fire_is_neutral(snapshot, root):
    s = Session(snapshot.glob)
    assert s.check_file(root / "corpus/anumana/13-2-1-mountain.nn").ok
    assert s.normal_form("inferred-fire") == "vyapti.1 mountain mountain-smoke"


def test_triple_mutual_absence_reduces(snapshot, root):
    s = Session(snapshot.glob)
    assert s.check_file(root / "corpus/commentary/13-5-2-triple-anyonyabhava.nn").ok
    assert s.normal_form("triple") == s.normal_form("single")


def test_misperception_is_a_type_mismatch(board):
    e = board.entry("13.1.2")
    (fc,) = [r for r in e.report.results if r.kind == "fail-check"]
    assert fc.ok and fc.observed == "TypeMismatch"


def test_missing_entry_reported(snapshot, tmp_path):
    (tmp_path / "one.nn").write_text('example x paper "13.1.1" { postulate Z : Type0 }\n')
    b = corpus.run_corpus(tmp_path, snapshot)
    assert not b.ok
    assert {d.code for d in b.problems} == {"MissingEntry"}
    assert len(b.problems) == len(corpus.REQUIRED_ANCHORS) - 1


def test_duplicate_anchor_reported(snapshot, tmp_path):
    for n in ("a", "b"):
        (tmp_path / f"{n}.nn").write_text(f'example {n} paper "13.1.1" {{ postulate Z : Type0 }}\n')
    b = corpus.run_corpus(tmp_path, snapshot, required=("13.1.1",))
    assert [d.code for d in b.problems] == ["DuplicateName"]


@pytest.mark.parametrize("rule", RULES)
def test_each_rule_is_load_bearing(snapshot, root, rule):
    b = corpus.run_corpus(root / "corpus", snapshot, disabled={rule})
    assert not b.ok, f"disabling {rule} changed nothing"


def test_doubling_fuel_changes_no_verdict(snapshot, root, board):
    doubled = corpus.run_corpus(root / "corpus", snapshot, fuel=2 * DEFAULT_FUEL)
    assert doubled.verdicts() == board.verdicts()


def test_concurrent_run_matches(snapshot, root, board):
    par = corpus.run_corpus(root / "corpus", snapshot, jobs=4)
    assert par.verdicts() == board.verdicts()


def test_json_report_schema(board):
    data = json.loads(json.dumps(board.to_json()))
    assert data["ok"] and data["total"] == len(board.entries)
    for e in data["entries"]:
        for r in e["results"]:
            if "diagnostic" in r:
                d = r["diagnostic"]
                assert set(d) >= {"code", "span", "message"}
                assert set(d["span"]) == {"file", "line", "col", "len"}
