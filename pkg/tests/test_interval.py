import random

import pytest

from nnkernel.interval import (
    ONE, ZERO, IJoin, IMeet, INeg, IntervalElem, IOne, IVar, IZero, ieq, inorm, to_expr,
)
from oracles import all_iexprs, m4_equal, random_iexpr

V3 = ("i", "j", "k")


def test_constants():
    assert inorm(IZero()).is_zero and inorm(IOne()).is_one
    assert ieq(inorm(INeg(IZero())), ONE)
    assert ieq(inorm(INeg(IOne())), ZERO)


def test_no_excluded_middle():
    i = IVar("i")
    assert not inorm(IJoin(i, INeg(i))).is_one
    assert not inorm(IMeet(i, INeg(i))).is_zero


def test_involution_on_variable():
    assert ieq(inorm(INeg(INeg(IVar("i")))), inorm(IVar("i")))


def test_printing_is_canonical():
    a = inorm(IJoin(IVar("j"), IMeet(IVar("i"), IVar("j"))))
    assert repr(a) == "j"
    assert repr(inorm(INeg(IMeet(IVar("i"), IVar("j"))))) == "~i \\/ ~j"


def test_normal_form_sound_up_to_depth_two():
    # every raw expression of depth <= 2 denotes what its normal form denotes
    for e in all_iexprs(V3, 2):
        assert m4_equal(e, to_expr(inorm(e)), V3), e


def test_sampled_pairs_depth_three():
    rng = random.Random(5)
    for _ in range(2000):
        a = random_iexpr(rng, V3, 3)
        b = random_iexpr(rng, V3, 3)
        assert ieq(inorm(a), inorm(b)) == m4_equal(a, b, V3), (a, b)


def test_subst_and_mentions():
    i, j = IntervalElem.var("i"), IntervalElem.var("j")
    e = i.meet(j.neg())
    assert e.mentions("j") and not e.mentions("k")
    out = e.subst(lambda v: ONE if v == "i" else j)
    assert ieq(out, j.neg())
    assert ieq(e.subst(lambda v: ZERO), ZERO)


@pytest.mark.parametrize("e", [ZERO, ONE, IntervalElem.var("i") | IntervalElem.lit("j", False)])
def test_to_expr_roundtrip(e):
    assert ieq(inorm(to_expr(e)), e)
