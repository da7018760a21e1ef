"""Algebraic laws of the interval.

The full 10^5-case sweep per law lives in the acceptance suite; here each law
gets a quicker pass plus hypothesis-driven checks on raw expressions.
"""

import random
import zlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nnkernel.interval import ONE, ZERO, IJoin, IMeet, INeg, IOne, IVar, IZero, ieq, inorm, to_expr
from oracles import random_iexpr

V = ("i", "j", "k")

LAWS = {
    "involution": lambda a, b, c: (a.neg().neg(), a),
    "de-morgan-meet": lambda a, b, c: ((a & b).neg(), a.neg() | b.neg()),
    "de-morgan-join": lambda a, b, c: ((a | b).neg(), a.neg() & b.neg()),
    "meet-commutative": lambda a, b, c: (a & b, b & a),
    "join-commutative": lambda a, b, c: (a | b, b | a),
    "meet-associative": lambda a, b, c: ((a & b) & c, a & (b & c)),
    "join-associative": lambda a, b, c: ((a | b) | c, a | (b | c)),
    "meet-absorbs": lambda a, b, c: (a & (a | b), a),
    "join-absorbs": lambda a, b, c: (a | (a & b), a),
    "meet-idempotent": lambda a, b, c: (a & a, a),
    "join-idempotent": lambda a, b, c: (a | a, a),
    "meet-distributes": lambda a, b, c: (a & (b | c), (a & b) | (a & c)),
    "join-distributes": lambda a, b, c: (a | (b & c), (a | b) & (a | c)),
    "bounds": lambda a, b, c: ((a & ONE) | (a & ZERO) | ZERO, a),
    "top-bottom": lambda a, b, c: ((a | ONE) & ONE, ONE),
}


def make_pool(size: int = 3000) -> list:
    rng = random.Random(7)
    return [inorm(random_iexpr(rng, V, 3)) for _ in range(size)]


def law_failures(law: str, pool: list, cases: int) -> int:
    f = LAWS[law]
    rng = random.Random(zlib.crc32(law.encode()))
    n = len(pool)
    failures = 0
    for _ in range(cases):
        lhs, rhs = f(pool[rng.randrange(n)], pool[rng.randrange(n)], pool[rng.randrange(n)])
        if not ieq(lhs, rhs):
            failures += 1
    return failures


@pytest.fixture(scope="module")
def pool():
    return make_pool()


@pytest.mark.parametrize("law", sorted(LAWS))
def test_law(law, pool):
    assert law_failures(law, pool, 5_000) == 0


exprs = st.recursive(
    st.sampled_from([IZero(), IOne(), IVar("i"), IVar("j"), IVar("k")]),
    lambda sub: st.one_of(
        st.builds(INeg, sub), st.builds(IMeet, sub, sub), st.builds(IJoin, sub, sub)
    ),
    max_leaves=12,
)


@settings(max_examples=300, deadline=None)
@given(exprs, exprs)
def test_de_morgan_on_raw_expressions(a, b):
    assert ieq(inorm(INeg(IMeet(a, b))), inorm(IJoin(INeg(a), INeg(b))))
    assert ieq(inorm(INeg(INeg(a))), inorm(a))


@settings(max_examples=300, deadline=None)
@given(exprs)
def test_normal_form_is_idempotent(a):
    n = inorm(a)
    assert inorm(to_expr(n)) == n
