import itertools
import random

import pytest

from nnkernel import models
from nnkernel.diagnostics import NNError
from oracles import count_witnesses, vyapti_oracle


def model(loci, preds, paksa=None, absent=(), inheres=None):
    return models.Model("m", tuple(loci), {k: frozenset(v) for k, v in preds.items()},
                        paksa, frozenset(absent), inheres or {})


def test_textbook_inference():
    m = model(["kitchen", "lake", "mountain"],
              {"smoke": {"kitchen", "mountain"}, "fire": {"kitchen"}}, paksa="mountain")
    v = models.check_vyapti(m, "smoke", "fire")
    assert v.key() == ("valid", "anvaya-vyatireki")
    assert (v.positive, v.negative) == ("kitchen", "lake")


def test_purely_positive():
    m = model(["a", "b"], {"H": {"a"}, "S": {"a", "b"}})
    assert models.check_vyapti(m, "H", "S").key() == ("valid", "kevalanvayi")


@pytest.mark.parametrize("preds,paksa,absent,label", [
    ({"H": set(), "S": {"a"}}, "a", (), "asiddha"),
    ({"H": {"a", "b"}, "S": {"a"}}, "a", (), "viruddha"),
    ({"H": {"a", "b", "c"}, "S": {"a", "b"}}, "a", (), "anaikantika"),
    ({"H": {"a", "b"}, "S": {"b"}}, "a", (("S", "a"),), "badhita"),
    ({"H": {"a", "b"}, "S": {"b"}, "U": {"b"}}, "a", (), "anaikantika"),
])
def test_fallacies(preds, paksa, absent, label):
    m = model(["a", "b", "c"], preds, paksa, absent)
    assert models.check_vyapti(m, "H", "S").verdict == label


def test_defeating_condition_is_named():
    m = model(["kitchen", "lake", "ball"],
              {"fire": {"kitchen", "ball"}, "smoke": {"kitchen"}, "wet": {"kitchen"}}, paksa="ball")
    v = models.check_vyapti(m, "fire", "smoke")
    assert (v.verdict, v.upadhi, v.locus) == ("anaikantika", "wet", "ball")


def test_unknown_names():
    with pytest.raises(NNError) as e:
        models.check_vyapti(model(["a"], {"H": {"a"}}), "H", "S")
    assert e.value.diagnostic.code == "UnknownPredicate"
    with pytest.raises(NNError) as e:
        model(["a"], {"H": {"z"}})
    assert e.value.diagnostic.code == "UnknownLocus"


def _all_small_models():
    loci = ["a", "b", "c"]
    subsets = [set(c) for r in range(4) for c in itertools.combinations(loci, r)]
    for h, s in itertools.product(subsets, repeat=2):
        for paksa in [None, *loci]:
            for absent in [(), (("S", paksa),)] if paksa else [()]:
                yield loci, {"H": h, "S": s}, paksa, absent


def test_agrees_with_oracle_exhaustively():
    n = 0
    for loci, preds, paksa, absent in _all_small_models():
        m = model(loci, preds, paksa, absent)
        assert models.check_vyapti(m, "H", "S").key() == vyapti_oracle(loci, preds, paksa, set(absent)), preds
        n += 1
    assert n > 400


def test_agrees_with_oracle_with_third_predicate():
    rng = random.Random(3)
    loci = ["a", "b", "c", "d"]
    for _ in range(3000):
        preds = {p: {x for x in loci if rng.random() < 0.5} for p in ("H", "S", "U")}
        paksa = rng.choice([None, *loci])
        m = model(loci, preds, paksa)
        assert models.check_vyapti(m, "H", "S").key() == vyapti_oracle(loci, preds, paksa)


def test_verdict_invariant_under_renaming():
    rng = random.Random(11)
    loci = ["a", "b", "c", "d"]
    for _ in range(500):
        preds = {p: {x for x in loci if rng.random() < 0.5} for p in ("H", "S", "U")}
        paksa = rng.choice([None, *loci])
        m = model(loci, preds, paksa)
        perm = loci[:]
        rng.shuffle(perm)
        lmap = dict(zip(loci, [x.upper() for x in perm]))
        pmap = {"H": "h", "S": "s", "U": "u"}
        assert models.check_vyapti(m.renamed(lmap, pmap), "h", "s").verdict == models.check_vyapti(m, "H", "S").verdict


def test_valid_means_no_counterexample():
    for loci, preds, paksa, absent in _all_small_models():
        m = model(loci, preds, paksa, absent)
        v = models.check_vyapti(m, "H", "S")
        if v.valid:
            assert all(x in preds["S"] for x in m.evidence if x in preds["H"])


# -- numerical distribution ---------------------------------------------------

def test_two_pots():
    m = model(["floor"], {}, inheres={"floor": ("pot1", "pot2")})
    assert [models.paryapti_check(m, "floor", n).valid for n in (1, 2, 3)] == [False, True, False]
    assert "missing pot2" in models.paryapti_check(m, "floor", 1).describe()


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_witnesses_unique_up_to_permutation(k):
    ents = tuple(f"e{i}" for i in range(k))
    for n in range(0, 4):
        ws = models.paryapti_witnesses(ents, n)
        assert len(ws) == count_witnesses(ents, n)
        if n == k:
            assert len(ws) == max(1, len(list(itertools.permutations(ents))))
            base = ws[0]
            for w in ws:
                assert sorted(w) == sorted(base)
        else:
            assert ws == []


def test_verdict_words_fold():
    assert models.normalize_verdict(("anaikāntika",)) == ("anaikantika",)
    assert models.normalize_verdict(("valid", "anvaya-vyatireki")) == ("valid", "anvaya-vyatireki")
