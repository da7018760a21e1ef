from nnkernel.session import Session


def test_example_block_scopes_names(session):
    r = session.check_text("""
example ex paper "x.1" {
  postulate inner : Type0
}
def outer : Type1 = Type0
""")
    assert r.ok and r.anchors == ["x.1"]
    assert session.lookup("inner") is not None
    r = session.check_text("def again : Type1 = inner\n")
    assert [d.code for d in r.diagnostics()] == ["UnresolvedName"]


def test_fail_check_outcomes(session):
    r = session.check_text("""
postulate A : Type0
postulate a : A
fail-check a : Type0 expecting TypeMismatch
fail-check a : A expecting TypeMismatch
fail-check a : Type0 expecting NotAFunction
""")
    assert [x.ok for x in r.results if x.kind == "fail-check"] == [True, False, False]
    assert r.results[-2].observed == "success"
    assert r.results[-1].observed == "TypeMismatch"


def test_fail_check_label_must_match(session):
    r = session.check_text("""
postulate H : Locus -> Type0
postulate S : Locus -> Type0
postulate nu : NoUpadhi H S
postulate mu : (x : Locus) -> H x -> Not (S x)
fail-check (mu, nu) : Vyapti H S expecting TypeMismatch viruddha
fail-check (mu, nu) : Vyapti H S expecting TypeMismatch asiddha
""")
    fcs = [x for x in r.results if x.kind == "fail-check"]
    assert [x.ok for x in fcs] == [True, False]
    assert fcs[1].observed == "TypeMismatch viruddha"


def test_labels_only_for_pervasion_goals(session):
    r = session.check_text("""
postulate A : Type0
fail-check (\\(x : A). x) : A -> Empty expecting TypeMismatch
""")
    fc = r.results[-1]
    assert fc.ok and fc.diagnostic.hetvabhasa is None


def test_model_expectation_failure(session):
    r = session.check_text("""
model m {
  loci: a b;
  pred H = {a b};
  pred S = {a};
  expect vyapti H S => valid
}
""")
    assert not r.ok
    assert r.diagnostics()[0].code == "ExpectationFailed"


def test_fuel_exhaustion_is_fatal(snapshot):
    s = Session(snapshot.glob, fuel=2)
    r = s.check_text("postulate P : Type1\npostulate L : Locus\ncheck refl P : Path Type1 (Abhava (Abhava P L svarupa) L svarupa) P\n")
    assert r.fatal is not None and r.fatal.code == "FuelExhausted"


def test_kernel_without_prelude():
    s = Session()
    r = s.check_text("postulate A : Type0\ndef id : A -> A = \\x. x\ncheck refl loop : Path (Path S1 base base) loop loop\n")
    assert r.ok
    assert s.normal_form("id") == "\\x. x"
