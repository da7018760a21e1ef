import pytest

from nnkernel.diagnostics import NNError
from nnkernel.nbe import RULES, Env, FuelExhausted, budget, eval_term
from kit import checks, convertible, declare, nf, value
from kit import core as parse_core


@pytest.fixture
def s(session):
    declare(session, """
postulate A : Type0
postulate B : Type0
postulate a : A
postulate b : A
postulate p : Path A a b
postulate e : Equiv A B
postulate L : Locus
postulate P : Type1
postulate f : A -> A
""")
    return session


def test_beta_and_projections(s):
    assert nf(s, "(\\(x : A). f x) a") == "f a"
    assert nf(s, "((a, b) : A * A).2") == "b"


def test_r1_path_beta(s):
    assert nf(s, "(<i> f (p @ i)) @ 1") == "f b"
    assert nf(s, "<j> (<i> f (p @ i)) @ j") == "<j> f (p @ j)"
    assert nf(s, "<j> (<i> f (p @ i)) @ j", disabled={"R1"}) != "<j> f (p @ j)"


def test_r2_endpoints(s):
    assert nf(s, "p @ 0") == "a"
    assert nf(s, "p @ 1") == "b"
    assert nf(s, "p @ 0", disabled={"R2"}) == "p @ 0"


def test_r3_constant_line(s):
    assert nf(s, "transp (<i> A) 0 a") == "a"
    assert nf(s, "transp (<i> A) 0 a", disabled={"R3"}) != "a"


def test_r4_univalence(s):
    assert nf(s, "transp (ua e) 0 a") == "e.1 a"
    assert nf(s, "transp (ua e) 0 a", disabled={"R4"}) != "e.1 a"


def test_r5_double_absence(s):
    assert nf(s, "Abhava (Abhava P L svarupa) L svarupa") == "P"
    assert nf(s, "Abhava (Abhava P L svarupa) L samavaya") != "P"
    assert nf(s, "Abhava (Abhava P L svarupa) L svarupa", disabled={"R5"}) != "P"


def test_fin_case_and_ua_identity(s):
    assert nf(s, "fin-case A (#1 : Fin 2) { a ; b }") == "b"
    assert nf(s, "fin-case A (#1 : Fin 2) { a ; b }", disabled={"FIN"}) != "b"
    assert convertible(s, "ua (idEquiv A)", "refl A")
    assert not convertible(s, "ua (idEquiv A)", "refl A", disabled={"UA_ID"})


def test_interval_algebra_inside_paths(s):
    assert convertible(s, "<i> p @ ~ ~ i", "p")
    assert convertible(s, "<i> p @ (i \\/ i /\\ i)", "p")
    assert not convertible(s, "<i> p @ (i /\\ ~i)", "refl a")


def test_loop_is_not_refl(session):
    assert not convertible(session, "loop", "refl base")
    assert convertible(session, "loop", "<i> loop @ i")


def test_eta(s):
    assert convertible(s, "f", "\\(x : A). f x")
    assert convertible(s, "p", "<i> p @ i")
    assert checks(s, "refl e", "Path (Equiv A B) e (e.1, e.2)") is None


def test_nat_literals(session):
    assert nf(session, "suc (suc zero)") == "2"
    assert convertible(session, "3", "suc 2")


def test_fuel_bound(s):
    s.fuel = 3
    with pytest.raises(NNError) as err:
        value(s, "(\\(x : A). (\\(y : A). (\\(z : A). f z) y) x) a")
    assert err.value.diagnostic.code == "FuelExhausted"
    with pytest.raises(FuelExhausted):
        with budget(2):
            eval_term(Env(s.glob), parse_core(s, "(\\(x : A). (\\(y : A). f y) x) a"))


def test_rules_are_named():
    assert RULES[:5] == ("R1", "R2", "R3", "R4", "R5")
