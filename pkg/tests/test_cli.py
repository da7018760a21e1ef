import json
import subprocess
import sys

import pytest

from nnkernel.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_clean(capsys, root):
    code, out, _ = run(capsys, "check", str(root / "corpus/anumana/13-2-1-mountain.nn"))
    assert code == 0 and "OK" in out


def test_check_missing_file(capsys):
    code, out, _ = run(capsys, "check", "definitely-missing.nn")
    assert code == 2 and "FileError" in out


def test_check_parse_error(capsys, tmp_path):
    f = tmp_path / "bad.nn"
    f.write_text("def x : Type0 = (\n")
    code, out, _ = run(capsys, "check", str(f))
    assert code == 2 and "ParseError" in out


def test_check_failure_exit_one(capsys, tmp_path):
    f = tmp_path / "wrong.nn"
    f.write_text("postulate A : Type0\npostulate a : A\ncheck a : Type0\n")
    code, out, _ = run(capsys, "check", str(f))
    assert code == 1 and "TypeMismatch" in out


def test_fuel_exhaustion_exit_three(capsys, root):
    code, _, _ = run(capsys, "check", "--fuel", "5", str(root / "corpus/theorems/abhava.nn"))
    assert code == 3


def test_fuel_must_be_positive(capsys):
    with pytest.raises(SystemExit):
        main(["check", "--fuel", "0", "x.nn"])


def test_eval_double_absence(capsys, root):
    code, out, _ = run(capsys, "eval", str(root / "prelude/abhava.nn"), "--term", "double-abhava-demo")
    assert code == 0 and out.strip() == "P"


def test_eval_unknown_term(capsys, root):
    code, _, err = run(capsys, "eval", str(root / "prelude/abhava.nn"), "--term", "nothing-here")
    assert code == 1 and "UnresolvedName" in err


def test_diagnose_labels_failures(capsys, tmp_path):
    f = tmp_path / "contra.nn"
    f.write_text(
        "postulate H : Locus -> Type0\npostulate S : Locus -> Type0\n"
        "postulate nu : NoUpadhi H S\npostulate mu : (x : Locus) -> H x -> Not (S x)\n"
        "check (mu, nu) : Vyapti H S\n"
    )
    code, out, _ = run(capsys, "diagnose", "--json", str(f))
    data = json.loads(out)
    (diag,) = data["files"][0]["diagnostics"]
    assert code == 1 and diag["hetvabhasa"] == "viruddha"
    code, out, _ = run(capsys, "check", "--json", str(f))
    assert "hetvabhasa" not in json.loads(out)["files"][0]["diagnostics"][0]


def test_json_schema(capsys, tmp_path):
    f = tmp_path / "wrong.nn"
    f.write_text("postulate A : Type0\ncheck A : A\n")
    _, out, _ = run(capsys, "check", "--json", str(f))
    (d,) = json.loads(out)["files"][0]["diagnostics"]
    assert set(d) >= {"code", "span", "message"}
    assert d["span"] == {"file": str(f), "line": 2, "col": 7, "len": 1}


def test_corpus_text_and_json_agree(capsys, root):
    code_t, text, _ = run(capsys, "corpus", str(root / "corpus"))
    code_j, js, _ = run(capsys, "corpus", "--json", str(root / "corpus"))
    data = json.loads(js)
    assert code_t == code_j == 0
    for e in data["entries"]:
        assert ("PASS " if e["ok"] else "FAIL ") + e["file"] in text


def test_fmt_is_stable(capsys, root, tmp_path):
    code, out, _ = run(capsys, "fmt", str(root / "corpus/theorems/hetvabhasa.nn"))
    assert code == 0
    f = tmp_path / "again.nn"
    f.write_text(out)
    _, out2, _ = run(capsys, "fmt", str(f))
    assert out2 == out


def test_prelude_override(capsys, root, tmp_path, monkeypatch):
    monkeypatch.setenv("NN_PRELUDE", str(tmp_path))
    code, out, _ = run(capsys, "check", str(root / "corpus/theorems/vyapti.nn"))
    assert code != 0
    code, _, _ = run(capsys, "check", "--prelude", str(root / "src/nnkernel/prelude"),
                     str(root / "corpus/theorems/vyapti.nn"))
    assert code == 0


def test_no_prelude(capsys, tmp_path):
    f = tmp_path / "k.nn"
    f.write_text("postulate A : Type0\ncheck refl loop : Path (Path S1 base base) loop loop\n")
    assert run(capsys, "check", "--no-prelude", str(f))[0] == 0


def test_module_entry_point(root):
    p = subprocess.run([sys.executable, "-m", "nnkernel", "check", str(root / "corpus/theorems/categorial.nn")],
                       capture_output=True, text=True)
    assert p.returncode == 0, p.stdout + p.stderr
