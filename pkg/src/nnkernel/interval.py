"""The interval: free De Morgan algebra over interval variables.

Elements are kept in canonical irredundant disjunctive normal form.  A literal
is a pair ``(var, positive)``; ``(v, False)`` stands for the involution
``1 - v``.  A variable and its involution are *independent* generators, so a
clause such as ``{r, ~r}`` is a perfectly good nonzero element: no
complementation law is ever applied.

Because the free De Morgan algebra on ``X`` is the free bounded distributive
lattice on the literals ``X + ~X``, the antichain of clauses (with absorption
fully applied) is a unique normal form, and equality is syntactic identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

Literal = tuple[Hashable, bool]
Clause = frozenset  # frozenset[Literal]


def _absorb(clauses: Iterable[frozenset]) -> frozenset:
    # keep only inclusion-minimal clauses
    cs = sorted(set(clauses), key=len)
    kept: list[frozenset] = []
    for c in cs:
        if not any(k <= c for k in kept):
            kept.append(c)
    return frozenset(kept)


@dataclass(frozen=True)
class IntervalElem:
    clauses: frozenset

    # -- constructors -----------------------------------------------------

    @staticmethod
    def var(v: Hashable) -> "IntervalElem":
        return IntervalElem(frozenset([frozenset([(v, True)])]))

    @staticmethod
    def lit(v: Hashable, positive: bool) -> "IntervalElem":
        return IntervalElem(frozenset([frozenset([(v, positive)])]))

    # -- queries ------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.clauses

    @property
    def is_one(self) -> bool:
        return frozenset() in self.clauses

    def variables(self) -> frozenset:
        return frozenset(v for c in self.clauses for (v, _) in c)

    def mentions(self, v: Hashable) -> bool:
        return any(lv == v for c in self.clauses for (lv, _) in c)

    # -- operations ---------------------------------------------------------

    def join(self, other: "IntervalElem") -> "IntervalElem":
        return IntervalElem(_absorb(self.clauses | other.clauses))

    def meet(self, other: "IntervalElem") -> "IntervalElem":
        return IntervalElem(_absorb(a | b for a in self.clauses for b in other.clauses))

    def neg(self) -> "IntervalElem":
        # ~(OR_i AND_j l_ij) = AND_i OR_j ~l_ij, redistributed into DNF
        result = ONE
        for clause in self.clauses:
            disj = IntervalElem(frozenset(frozenset([(v, not p)]) for (v, p) in clause))
            result = result.meet(disj)
        return result

    __or__ = join
    __and__ = meet
    __invert__ = neg

    def subst(self, f: Callable[[Hashable], "IntervalElem"]) -> "IntervalElem":
        """Replace every variable ``v`` by ``f(v)`` (literals ``~v`` by ``~f(v)``)."""
        result = ZERO
        for clause in self.clauses:
            acc = ONE
            for v, p in clause:
                image = f(v)
                acc = acc.meet(image if p else image.neg())
            result = result.join(acc)
        return result

    def sorted_clauses(self) -> list[list[Literal]]:
        def lit_key(lit):
            return (str(lit[0]), not lit[1])
        cs = [sorted(c, key=lit_key) for c in self.clauses]
        cs.sort(key=lambda c: (len(c), [lit_key(l) for l in c]))
        return cs

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        if self.is_one:
            return "1"
        parts = []
        for c in self.sorted_clauses():
            parts.append(" /\\ ".join(str(v) if p else f"~{v}" for v, p in c))
        return " \\/ ".join(parts)


ZERO = IntervalElem(frozenset())
ONE = IntervalElem(frozenset([frozenset()]))


# -- raw expressions ---------------------------------------------------------

@dataclass(frozen=True)
class IZero:
    pass


@dataclass(frozen=True)
class IOne:
    pass


@dataclass(frozen=True)
class IVar:
    name: Hashable


@dataclass(frozen=True)
class IMeet:
    left: "IExpr"
    right: "IExpr"


@dataclass(frozen=True)
class IJoin:
    left: "IExpr"
    right: "IExpr"


@dataclass(frozen=True)
class INeg:
    arg: "IExpr"


IExpr = IZero | IOne | IVar | IMeet | IJoin | INeg


def inorm(e: IExpr) -> IntervalElem:
    """Normalize a raw interval expression into canonical form."""
    match e:
        case IZero():
            return ZERO
        case IOne():
            return ONE
        case IVar(v):
            return IntervalElem.var(v)
        case IMeet(a, b):
            return inorm(a).meet(inorm(b))
        case IJoin(a, b):
            return inorm(a).join(inorm(b))
        case INeg(a):
            return inorm(a).neg()
        case IntervalElem():
            return e
    raise TypeError(f"not an interval expression: {e!r}")


def ieq(a: IntervalElem, b: IntervalElem) -> bool:
    return a.clauses == b.clauses


def to_expr(e: IntervalElem) -> IExpr:
    """Rebuild a raw expression from a canonical element (right-nested)."""
    if e.is_zero:
        return IZero()
    if e.is_one:
        return IOne()
    disj: IExpr | None = None
    for clause in reversed(e.sorted_clauses()):
        conj: IExpr | None = None
        for v, p in reversed(clause):
            lit = IVar(v) if p else INeg(IVar(v))
            conj = lit if conj is None else IMeet(lit, conj)
        disj = conj if disj is None else IJoin(conj, disj)
    return disj
