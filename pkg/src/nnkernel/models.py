"""Finite extensional models: pervasion checking, fallacy labels, numerical distribution.

A model lists loci, predicates with finite extents, an optional inference
locus (the *paksa*), explicit defeating observations, and for each locus the
entities inhering in it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import syntax as C
from .diagnostics import Diagnostic, NNError
from .surface import ast as A
from .surface.names import fold, label as fold_label

VALID = "valid"
SHAPES = ("kevalanvayi", "anvaya-vyatireki")
LABEL_HEADS = frozenset({"Vyapti", "Kevalanvayi", "AnvayaVyatireki"})


@dataclass
class Model:
    name: str
    loci: tuple[str, ...] = ()
    preds: dict[str, frozenset[str]] = field(default_factory=dict)
    paksa: str | None = None
    observed_absent: frozenset[tuple[str, str]] = frozenset()
    inheres: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(set(self.loci)) != len(self.loci):
            raise NNError(Diagnostic("DuplicateName", f"model {self.name}: duplicate locus"))
        known = set(self.loci)
        for p, ext in self.preds.items():
            for x in ext:
                if x not in known:
                    raise NNError(Diagnostic("UnknownLocus", f"predicate {p} mentions unknown locus {x!r}"))
        if self.paksa is not None and self.paksa not in known:
            raise NNError(Diagnostic("UnknownLocus", f"paksa {self.paksa!r} is not a declared locus"))
        for p, x in self.observed_absent:
            self._pred(p)
            if x not in known:
                raise NNError(Diagnostic("UnknownLocus", f"observation at unknown locus {x!r}"))
        for x in self.inheres:
            if x not in known:
                raise NNError(Diagnostic("UnknownLocus", f"inherence at unknown locus {x!r}"))

    def _pred(self, p: str) -> frozenset[str]:
        if p not in self.preds:
            raise NNError(Diagnostic("UnknownPredicate", f"model {self.name} has no predicate {p!r}"))
        return self.preds[p]

    @property
    def evidence(self) -> tuple[str, ...]:
        """Loci whose status is known independently of the inference."""
        return tuple(x for x in self.loci if x != self.paksa)

    def renamed(self, loci: dict[str, str], preds: dict[str, str]) -> "Model":
        return Model(
            self.name,
            tuple(loci[x] for x in self.loci),
            {preds[p]: frozenset(loci[x] for x in ext) for p, ext in self.preds.items()},
            None if self.paksa is None else loci[self.paksa],
            frozenset((preds[p], loci[x]) for p, x in self.observed_absent),
            {loci[x]: es for x, es in self.inheres.items()},
        )


@dataclass(frozen=True)
class VyaptiVerdict:
    verdict: str  # "valid" or a fallacy label
    shape: str | None = None
    locus: str | None = None  # deviating locus
    upadhi: str | None = None
    positive: str | None = None
    negative: str | None = None
    scope: tuple[str, ...] = ()  # predicates searched as defeaters

    @property
    def valid(self) -> bool:
        return self.verdict == VALID

    def describe(self) -> str:
        if self.valid:
            parts = [f"valid ({self.shape})"]
            if self.positive:
                parts.append(f"positive={self.positive}")
            if self.negative:
                parts.append(f"negative={self.negative}")
            return ", ".join(parts)
        extra = []
        if self.locus:
            extra.append(f"locus={self.locus}")
        if self.upadhi:
            extra.append(f"upadhi={self.upadhi}")
        return self.verdict + (f" ({', '.join(extra)})" if extra else "")

    def key(self) -> tuple[str, ...]:
        return (self.verdict, self.shape) if self.valid else (self.verdict,)


def check_vyapti(m: Model, h: str, s: str) -> VyaptiVerdict:
    """Verdict for "h pervaded by s" in ``m``.

    Evidence is every locus except the paksa.  In order: an empty hetu extent
    is asiddha; hetu evidence lacking the sadhya is viruddha when all of it
    deviates and anaikantika otherwise; a sadhya observed absent at the paksa
    is badhita; a predicate covering the sadhya's extent but not the hetu's
    is an upadhi (anaikantika); a hetu seen only at the paksa is anaikantika.
    Anything left is valid, kevalanvayi when no evidence locus lacks the
    sadhya.
    """
    eh, es = m._pred(h), m._pred(s)
    ev = m.evidence
    if not eh:
        return VyaptiVerdict("asiddha")
    h_ev = [x for x in ev if x in eh]
    deviating = [x for x in h_ev if x not in es]
    if deviating:
        kind = "viruddha" if len(deviating) == len(h_ev) else "anaikantika"
        return VyaptiVerdict(kind, locus=deviating[0])
    p = m.paksa
    if p is not None and p not in es and (s, p) in m.observed_absent:
        return VyaptiVerdict("badhita", locus=p)
    scope = tuple(u for u in m.preds if u not in (h, s))
    for u in scope:
        eu = m.preds[u]
        if es <= eu and not eh <= eu:
            return VyaptiVerdict("anaikantika", upadhi=u, locus=min(eh - eu, key=m.loci.index), scope=scope)
    if not h_ev:
        # the hetu occurs only at the paksa: no co-instance supports it
        return VyaptiVerdict("anaikantika", locus=p, scope=scope)
    positive = h_ev[0]
    negatives = [x for x in ev if x not in es]
    if not negatives:
        return VyaptiVerdict(VALID, "kevalanvayi", positive=positive, scope=scope)
    return VyaptiVerdict(VALID, "anvaya-vyatireki", positive=positive, negative=negatives[0], scope=scope)


# -- numerical distribution -----------------------------------------------------

@dataclass(frozen=True)
class ParyaptiVerdict:
    valid: bool
    witness: tuple[str, ...] | None = None  # index k -> entity
    missing: tuple[str, ...] = ()  # entities no index reaches
    excess: tuple[int, ...] = ()  # indices with no entity left

    def describe(self) -> str:
        if self.valid:
            return "valid: " + ", ".join(f"#{k} -> {e}" for k, e in enumerate(self.witness or ()))
        if self.missing:
            return "invalid: not exhaustive, missing " + ", ".join(self.missing)
        return "invalid: not injective, surplus indices " + ", ".join(f"#{k}" for k in self.excess)


def paryapti_check(m: Model, locus: str, n: int) -> ParyaptiVerdict:
    if locus not in m.loci:
        raise NNError(Diagnostic("UnknownLocus", f"model {m.name} has no locus {locus!r}"))
    ents = m.inheres.get(locus, ())
    if n == len(ents):
        return ParyaptiVerdict(True, tuple(ents))
    if n < len(ents):
        return ParyaptiVerdict(False, missing=tuple(ents[n:]))
    return ParyaptiVerdict(False, excess=tuple(range(len(ents), n)))


def paryapti_witnesses(entities: tuple[str, ...], n: int) -> list[tuple[str, ...]]:
    """Every map ``Fin n -> entities`` that is injective and exhaustive."""
    out = []
    for w in itertools.product(entities, repeat=n):
        if len(set(w)) == n and set(w) == set(entities):
            out.append(w)
    return out


# -- building models from source ------------------------------------------------

def build_model(node: A.Model) -> Model:
    loci: list[str] = []
    preds: dict[str, frozenset[str]] = {}
    paksa = None
    absent = set()
    inheres: dict[str, tuple[str, ...]] = {}
    for it in node.items:
        match it:
            case A.MLoci(names):
                loci.extend(names)
            case A.MPred(name, members):
                if name in preds:
                    raise NNError(Diagnostic("DuplicateName", f"predicate {name} declared twice", it.span))
                preds[name] = frozenset(members)
            case A.MPaksa(x):
                paksa = x
            case A.MObservedAbsent(p, x):
                absent.add((p, x))
            case A.MInheres(x, members):
                inheres[x] = tuple(members)
    try:
        return Model(node.name, tuple(loci), preds, paksa, frozenset(absent), inheres)
    except NNError as e:
        if e.diagnostic.span is None:
            e.diagnostic.span = node.span
        raise


def normalize_verdict(words: tuple[str, ...]) -> tuple[str, ...]:
    out = []
    for w in words:
        f = fold(w).lower()
        out.append(fold_label(w) or f)
    if out and out[0] == VALID and len(out) == 1:
        return (VALID,)
    return tuple(out)


def verdict_matches(v: VyaptiVerdict, expected: tuple[str, ...]) -> bool:
    exp = normalize_verdict(expected)
    if exp == (VALID,):
        return v.valid
    return v.key() == exp


# -- fallacy labels for type errors ----------------------------------------------

def head_name(t: C.Term) -> str | None:
    while isinstance(t, C.App):
        t = t.fn
    return t.name if isinstance(t, C.Global) else None


def _is_neg(t: C.Term) -> C.Term | None:
    """``X -> Empty`` gives ``X``."""
    if isinstance(t, C.Pi) and t.cod == C.Const("Empty"):
        return t.dom
    return None


def _telescope(t: C.Term) -> tuple[list[C.Term], C.Term]:
    doms = []
    while isinstance(t, C.Pi) and _is_neg(t) is None:
        doms.append(t.dom)
        t = t.cod
    return doms, t


def _no_upadhi_shape(t: C.Term) -> bool:
    inner = _is_neg(t)
    if not isinstance(inner, C.Sigma):
        return False
    u = inner.fst
    while isinstance(u, C.Pi):
        u = u.cod
    return isinstance(u, C.Univ)


def classify(expected: C.Term | None, actual: C.Term | None, goals: list) -> str | None:
    if expected is not None and actual is not None:
        e_doms, e_cod = _telescope(expected)
        a_doms, a_cod = _telescope(actual)
        if any(d == C.Const("Empty") for d in a_doms):
            return "asiddha"
        negated = _is_neg(a_cod)
        if negated is not None and negated == e_cod and len(e_doms) == len(a_doms):
            return "viruddha" if e_doms else "badhita"
    if any(_no_upadhi_shape(g) for g in goals):
        return "anaikantika"
    return None


def diagnose(d: Diagnostic, goal: C.Term | None) -> Diagnostic:
    """Attach a fallacy label when the failure matches a known pattern; otherwise unchanged."""
    if goal is None or head_name(goal) not in LABEL_HEADS:
        return d
    lab = classify(d.expected_term, d.actual_term, [g for (_, _, g) in d.goals])
    if lab is not None:
        d.hetvabhasa = lab
    return d
