"""Concrete syntax trees.  Spans are carried but excluded from equality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Node:
    span: Any = field(default=None, compare=False, repr=False, kw_only=True)


# -- terms ---------------------------------------------------------------------

@dataclass(frozen=True)
class SVar(Node):
    name: str


@dataclass(frozen=True)
class SNum(Node):
    value: int


@dataclass(frozen=True)
class SConst(Node):
    """A built-in keyword such as ``Nat``, ``refl`` or ``Path``."""
    name: str


@dataclass(frozen=True)
class SUniv(Node):
    level: int
    tag: str | None = None


@dataclass(frozen=True)
class SApp(Node):
    fn: Node
    arg: Node


@dataclass(frozen=True)
class SPApp(Node):
    fn: Node
    r: Any  # raw interval expression over names


@dataclass(frozen=True)
class Group(Node):
    names: tuple[str, ...]
    ty: Node | None


@dataclass(frozen=True)
class SLam(Node):
    binders: tuple[Group, ...]
    body: Node


@dataclass(frozen=True)
class SPi(Node):
    groups: tuple[Group, ...]
    cod: Node


@dataclass(frozen=True)
class SArrow(Node):
    dom: Node
    cod: Node


@dataclass(frozen=True)
class SSigma(Node):
    groups: tuple[Group, ...]
    body: Node


@dataclass(frozen=True)
class SProd(Node):
    left: Node
    right: Node


@dataclass(frozen=True)
class SPLam(Node):
    names: tuple[str, ...]
    body: Node


@dataclass(frozen=True)
class SPair(Node):
    fst: Node
    snd: Node


@dataclass(frozen=True)
class SProj(Node):
    arg: Node
    which: int
    spelling: str  # "1"/"2" or "fst"/"snd"


@dataclass(frozen=True)
class SAnn(Node):
    term: Node
    ty: Node


@dataclass(frozen=True)
class SLet(Node):
    name: str
    ty: Node
    val: Node
    body: Node


@dataclass(frozen=True)
class STransp(Node):
    line: Node
    r: Any
    arg: Node


@dataclass(frozen=True)
class SFinCase(Node):
    ty: Node
    scrut: Node
    branches: tuple[Node, ...]


@dataclass(frozen=True)
class SFinLit(Node):
    k: int


# -- declarations ------------------------------------------------------------

@dataclass(frozen=True)
class Postulate(Node):
    name: str
    params: tuple[Group, ...]
    ty: Node


@dataclass(frozen=True)
class Def(Node):
    name: str
    params: tuple[Group, ...]
    ty: Node
    body: Node


@dataclass(frozen=True)
class Check(Node):
    term: Node
    ty: Node


@dataclass(frozen=True)
class FailCheck(Node):
    term: Node
    ty: Node
    code: str
    label: str | None = None


@dataclass(frozen=True)
class Model(Node):
    name: str
    items: tuple[Node, ...]


@dataclass(frozen=True)
class Example(Node):
    name: str
    anchor: str
    decls: tuple[Node, ...]


@dataclass(frozen=True)
class SourceModule(Node):
    decls: tuple[Node, ...]


# -- model items ---------------------------------------------------------------

@dataclass(frozen=True)
class MLoci(Node):
    names: tuple[str, ...]


@dataclass(frozen=True)
class MPred(Node):
    name: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class MPaksa(Node):
    locus: str


@dataclass(frozen=True)
class MObservedAbsent(Node):
    pred: str
    locus: str


@dataclass(frozen=True)
class MInheres(Node):
    locus: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class MExpectVyapti(Node):
    hetu: str
    sadhya: str
    verdict: tuple[str, ...]


@dataclass(frozen=True)
class MExpectParyapti(Node):
    locus: str
    n: int
    verdict: str


def strip_spans(x):
    """Structural view used for round-trip comparison (spans already ignored by ==)."""
    return x
