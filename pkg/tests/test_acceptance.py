"""Acceptance criteria, one test per criterion.

A summary line per criterion (PASS or FAIL) is printed at the end of the run
by the hook in conftest.py.
"""

from __future__ import annotations

import random
import time

import pytest

from kit import checks, convertible, nf
from nnkernel import corpus, models
from nnkernel.interval import IJoin, IMeet, INeg, ieq, inorm
from nnkernel.nbe import DEFAULT_FUEL
from nnkernel.session import Session
from nnkernel.surface.parser import parse_module
from nnkernel.surface.pretty import module
from oracles import all_iexprs, count_witnesses, m4_equal, m4_table, random_iexpr, vyapti_oracle
from test_interval_laws import LAWS, law_failures, make_pool

V3 = ("i", "j", "k")

TAGGED = {
    "Dravya": "dravya", "Guna": "guna", "Karman": "karman", "Jati": "samanya",
    "Visesa": "visesa", "Inherence": "samavaya", "Absence": "abhava",
}


def _file(snapshot, root, rel):
    s = Session(snapshot.glob)
    return s, s.check_file(root / rel)


@pytest.mark.criterion(1, "interval normal forms agree with the four-element De Morgan algebra")
def test_interval_oracle_equivalence():
    start = time.perf_counter()
    # exhaustive through depth 3: operators over one representative per depth-2 denotation
    reps = {}
    for e in all_iexprs(V3, 2):
        reps.setdefault(m4_table(e, V3), e)
    reps = list(reps.values())
    level3 = reps + [INeg(a) for a in reps]
    level3 += [IMeet(a, b) for a in reps for b in reps] + [IJoin(a, b) for a in reps for b in reps]
    nf_to_table, table_to_nf = {}, {}
    for e in level3:
        n, t = inorm(e), m4_table(e, V3)
        assert nf_to_table.setdefault(n, t) == t
        assert table_to_nf.setdefault(t, n) == n
    # sampled pairs at depth 4
    rng = random.Random(1)
    for _ in range(10_000):
        a, b = random_iexpr(rng, V3, 4), random_iexpr(rng, V3, 4)
        if rng.random() < 0.3:
            b = IJoin(IMeet(a, a), a)  # force some equal pairs
        assert ieq(inorm(a), inorm(b)) == m4_equal(a, b, V3)
    assert time.perf_counter() - start < 10.0


@pytest.mark.criterion(2, "involution, De Morgan, lattice and distributive laws on 10^5 cases each")
def test_algebraic_laws():
    pool = make_pool()
    failures = {law: law_failures(law, pool, 100_000) for law in LAWS}
    assert failures == {law: 0 for law in LAWS}


@pytest.mark.criterion(3, "double absence is definitionally the original; needs R5")
def test_absence_involution(snapshot):
    s = Session(snapshot.glob)
    s.check_text("postulate P : Type1\npostulate L : Locus\n")
    goal = "Path Type1 (Abhava (Abhava P L svarupa) L svarupa) P"
    assert checks(s, "refl P", goal) is None
    assert nf(s, "Abhava (Abhava P L svarupa) L svarupa") == "P"
    assert checks(s, "refl P", goal, disabled={"R5"}) is not None
    assert nf(s, "Abhava (Abhava P L svarupa) L svarupa", disabled={"R5"}) != "P"


@pytest.mark.criterion(4, "purely positive pervasion does not yield a two-sided one")
def test_kevalanvayi_irreducibility(snapshot, root):
    s = Session(snapshot.glob)
    s.check_text("postulate H : Locus -> Type0\npostulate S : Locus -> Type0\npostulate kw : Kevalanvayi H S\n")
    proof = "\\(f : Kevalanvayi H S -> AnvayaVyatireki H S). kw.2 ((f kw).2.2.1, (f kw).2.2.2.2)"
    assert checks(s, proof, "Not (Kevalanvayi H S -> AnvayaVyatireki H S)") is None
    assert checks(s, "kevalanvayi-irreducible H S kw", "Not (Kevalanvayi H S -> AnvayaVyatireki H S)") is None
    assert _file(snapshot, root, "corpus/theorems/vyapti.nn")[1].ok


@pytest.mark.criterion(5, "coextensive universals with distinct traits are not equal")
def test_coextension_without_identity(snapshot, root):
    s, report = _file(snapshot, root, "corpus/theorems/coextensive.nn")
    assert report.ok
    assert checks(s, "coextensive", "(x : Entity) -> Equiv (U1.1 x) (U2.1 x)") is None
    assert convertible(s, "U1.1", "U2.1")
    assert not convertible(s, "U1", "U2")
    fc = [r for r in report.results if r.kind == "fail-check"]
    assert fc and all(r.ok for r in fc)


@pytest.mark.criterion(6, "loop is not refl; depth-2 tower checks, UIP variant does not")
def test_no_hset_collapse(snapshot, root):
    s = Session(snapshot.glob)
    assert not convertible(s, "loop", "refl base")
    _, report = _file(snapshot, root, "corpus/theorems/no-uip.nn")
    assert report.ok
    kinds = {r.kind for r in report.results}
    assert {"def", "check", "fail-check"} <= kinds
    tower = next(r for r in report.results if r.name == "tower")
    assert tower.ok


@pytest.mark.criterion(7, "all 42 ordered cross-category paths are categorial mismatches")
def test_categorial_soundness(snapshot, root):
    s = Session(snapshot.glob)
    codes = {}
    for a in TAGGED:
        for b in TAGGED:
            if a != b:
                d = checks(s, f"refl {a}", f"Path Type2 {a} {b}")
                codes[(a, b)] = d.code if d else "accepted"
    assert len(codes) == 42
    assert set(codes.values()) == {"CategorialMismatch"}
    _, report = _file(snapshot, root, "corpus/theorems/categorial.nn")
    fcs = [r for r in report.results if r.kind == "fail-check"]
    assert report.ok and len(fcs) == 42


@pytest.mark.criterion(8, "two pots distribute at n=2 only; witness unique up to permutation")
def test_paryapti_uniqueness(snapshot, root):
    m = models.Model("two-pots", ("floor",), {}, None, frozenset(), {"floor": ("pot1", "pot2")})
    assert [models.paryapti_check(m, "floor", n).valid for n in (1, 2, 3)] == [False, True, False]
    for k in range(4):
        ents = tuple(f"e{i}" for i in range(k))
        for n in range(4):
            ws = models.paryapti_witnesses(ents, n)
            assert len(ws) == count_witnesses(ents, n)
            if n != k:
                assert ws == []
            else:
                assert {tuple(sorted(w)) for w in ws} == {tuple(sorted(ents))}
    _, report = _file(snapshot, root, "corpus/theorems/paryapti.nn")
    assert report.ok


@pytest.mark.criterion(9, "each fallacy has a model giving exactly its label; knowability is inconclusive")
def test_fallacy_table(snapshot, root):
    _, report = _file(snapshot, root, "corpus/theorems/hetvabhasa.nn")
    assert report.ok
    by_model = {r.name.split(":")[0]: r.observed for r in report.results if r.kind == "vyapti"}
    assert by_model == {f"{lab}-model": lab for lab in ("asiddha", "viruddha", "anaikantika", "badhita")}
    labels = sorted(r.observed for r in report.results if r.kind == "fail-check")
    assert labels == sorted(f"TypeMismatch {lab}" for lab in ("asiddha", "viruddha", "anaikantika", "badhita"))
    _, know = _file(snapshot, root, "corpus/anumana/13-2-3-knowability.nn")
    assert know.ok
    (v,) = [r for r in know.results if r.kind == "vyapti"]
    assert v.observed == "anaikantika"
    loci = ["kitchen", "lake", "mountain"]
    preds = {"knowable": set(loci), "hasFire": {"kitchen"}}
    assert vyapti_oracle(loci, preds, "mountain", h="knowable", s="hasFire") == ("anaikantika",)


@pytest.mark.criterion(10, "every worked example passes, fast, and more fuel changes nothing")
def test_corpus(snapshot, root):
    start = time.perf_counter()
    board = corpus.run_corpus(root / "corpus", snapshot)
    elapsed = time.perf_counter() - start
    assert board.ok, board.text()
    anchors = [a for e in board.entries for a in e.anchors]
    assert sorted(anchors) == sorted(corpus.REQUIRED_ANCHORS)
    assert elapsed < 60
    doubled = corpus.run_corpus(root / "corpus", snapshot, fuel=2 * DEFAULT_FUEL)
    assert doubled.verdicts() == board.verdicts()


@pytest.mark.criterion(11, "parse after pretty is the identity on every prelude and corpus file")
def test_roundtrip(root):
    files = sorted((root / "src/nnkernel/prelude").glob("*.nn")) + sorted((root / "corpus").rglob("*.nn"))
    assert len(files) >= 8 + 14
    for f in files:
        m = parse_module(f.read_text(encoding="utf-8"), str(f))
        assert parse_module(module(m)) == m, f
