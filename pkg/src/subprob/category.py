"""Morphisms of state experiment probability systems and of property systems.

A SEP morphism ``(m, l): (Σ', Q', μ') -> (Σ, Q, μ)`` runs states forwards
and experiments backwards: ``m: Σ' -> Σ`` and ``l: Q -> Q'``.  Here ``l`` is
given on the base symbols of ``Q`` only, each mapped to a canonical term over
``Q'``, and is extended to all terms so that it commutes with product and
inverse (:func:`extend_l`).  Covariance

    μ(β, m(p')) = μ'(l(β), p')

then only needs checking on base symbols, because both sides commute with
unions and with ``1 - V``.

The unit is preserved semantically (``l(tau)`` certain in every state of the
source system), not syntactically.

Composition is componentwise.  For ``φ1: S1 -> S2`` and ``φ2: S2 -> S3``,
``compose(φ2, φ1) = (m2 ∘ m1, extend_l(l1) ∘ l2)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Hashable, List, Mapping, Optional, Union

from .experiments import Base, Product, Term, Tilde, enumerate_terms, factors, format_term, parse_term, product, symbols, tilde
from .intervals import DomainError, ParseError
from .properties import StatePropertySystem, certainty_set, derive_sp, literal_certainty_sets
from .sep import SepParseError, SepSystem, Violation, mu_eval

__all__ = [
    "SepMorphism",
    "SpMorphism",
    "IllDefinedMorphismError",
    "extend_l",
    "CovarianceViolation",
    "UnmappedState",
    "BadStateImage",
    "UnmappedExperiment",
    "BadExperimentImage",
    "XiViolation",
    "validate_sep_morphism",
    "derive_sp_morphism",
    "validate_sp_morphism",
    "identity",
    "identity_sp",
    "compose",
    "compose_sp",
    "loads_morphism",
    "load_morphism",
    "dumps_morphism",
]


@dataclass(frozen=True)
class SepMorphism:
    m: Mapping[str, str]
    l: Mapping[str, Term]

    def __post_init__(self):
        object.__setattr__(self, "m", dict(self.m))
        object.__setattr__(self, "l", dict(self.l))

    def __hash__(self):
        return hash((frozenset(self.m.items()), frozenset(self.l.items())))


@dataclass(frozen=True)
class SpMorphism:
    m: Mapping[str, str]
    n: Mapping[Hashable, Hashable]

    def __post_init__(self):
        object.__setattr__(self, "m", dict(self.m))
        object.__setattr__(self, "n", dict(self.n))


class IllDefinedMorphismError(ValueError):
    """Two members of one property class landed in different classes."""


def extend_l(l: Mapping[str, Term], t: Term) -> Term:
    if isinstance(t, Base):
        try:
            return l[t.name]
        except KeyError:
            raise KeyError(f"experiment {t.name!r} is not mapped") from None
    if isinstance(t, Tilde):
        return tilde(extend_l(l, t.inner))
    if isinstance(t, Product):
        return product(extend_l(l, f) for f in t.factors)
    raise TypeError(f"not an experiment term: {t!r}")


# ---------------------------------------------------------------- SEP level

@dataclass(frozen=True, repr=False)
class CovarianceViolation(Violation):
    symbol: str
    state: str


@dataclass(frozen=True, repr=False)
class UnmappedState(Violation):
    state: str


@dataclass(frozen=True, repr=False)
class BadStateImage(Violation):
    state: str
    image: str


@dataclass(frozen=True, repr=False)
class UnmappedExperiment(Violation):
    symbol: str


@dataclass(frozen=True, repr=False)
class BadExperimentImage(Violation):
    symbol: str
    image: str


def validate_sep_morphism(src: SepSystem, dst: SepSystem, phi: SepMorphism) -> List[Violation]:
    """Check ``phi: src -> dst``; ``src`` is the bigger entity ``(Σ', Q', μ')``."""
    out: List[Violation] = []
    for p in src.states:
        if p not in phi.m:
            out.append(UnmappedState(p))
        elif phi.m[p] not in dst.states:
            out.append(BadStateImage(p, phi.m[p]))
    for b in dst.base:
        if b not in phi.l:
            out.append(UnmappedExperiment(b))
        elif not symbols(phi.l[b]) <= set(src.base):
            out.append(BadExperimentImage(b, format_term(phi.l[b])))
    if out:
        return out
    for b in dst.base:
        for p in src.states:
            if dst.mu(b, phi.m[p]) != mu_eval(src, phi.l[b], p):
                out.append(CovarianceViolation(b, p))
    return out


# ---------------------------------------------------------------- SP level

@dataclass(frozen=True, repr=False)
class XiViolation(Violation):
    element: Hashable
    state: str


def derive_sp_morphism(phi: SepMorphism, src: SepSystem, dst: SepSystem,
                       sp_src: Optional[StatePropertySystem] = None,
                       sp_dst: Optional[StatePropertySystem] = None) -> SpMorphism:
    """Related SP morphism: ``n(a)`` is the class of ``l(α)`` for ``α`` in ``a``.

    Every member of every class of ``dst`` is mapped, and all images of one
    class must land in one class of ``src``.
    """
    sp_src = sp_src or derive_sp(src)
    sp_dst = sp_dst or derive_sp(dst)
    by_set_src = {e.certainty: e for e in sp_src.lattice.elements}
    by_set_dst = {e.certainty: e for e in sp_dst.lattice.elements}
    # certainty sets of products are intersections, so per-literal sets suffice
    dst_lits = literal_certainty_sets(dst, sp_dst.certainty)
    img_lits = {lit: certainty_set(src, extend_l(phi.l, lit), sp_src.certainty) for lit in dst_lits}
    all_dst, all_src = frozenset(dst.states), frozenset(src.states)
    n: Dict[Hashable, Hashable] = {}
    for t in enumerate_terms(dst.base):
        fs = factors(t)
        a = by_set_dst[all_dst.intersection(*(dst_lits[f] for f in fs))]
        image = by_set_src[all_src.intersection(*(img_lits[f] for f in fs))]
        if a in n and n[a] != image:
            raise IllDefinedMorphismError(
                f"class {a} maps to both {n[a]} and {image} (via {format_term(t)})"
            )
        n[a] = image
    return SpMorphism(dict(phi.m), n)


def validate_sp_morphism(sp_src: StatePropertySystem, sp_dst: StatePropertySystem,
                         psi: SpMorphism) -> List[Violation]:
    """``a ∈ ξ(m(p')) <=> n(a) ∈ ξ'(p')`` for every property and source state."""
    out: List[Violation] = []
    for p in sp_src.states:
        if p not in psi.m:
            out.append(UnmappedState(p))
        elif psi.m[p] not in sp_dst.xi:
            out.append(BadStateImage(p, psi.m[p]))
    for a in sp_dst.lattice.elements:
        if a not in psi.n:
            out.append(UnmappedExperiment(str(a)))
    if out:
        return out
    for a in sp_dst.lattice.elements:
        for p in sp_src.states:
            if (a in sp_dst.xi[psi.m[p]]) != (psi.n[a] in sp_src.xi[p]):
                out.append(XiViolation(a, p))
    return out


# ---------------------------------------------------------------- category

def identity(sys: SepSystem) -> SepMorphism:
    return SepMorphism({p: p for p in sys.states}, {b: Base(b) for b in sys.base})


def identity_sp(sp: StatePropertySystem) -> SpMorphism:
    return SpMorphism({p: p for p in sp.states}, {e: e for e in sp.lattice.elements})


def compose(phi2: SepMorphism, phi1: SepMorphism) -> SepMorphism:
    """``phi2 ∘ phi1`` for ``phi1: S1 -> S2`` and ``phi2: S2 -> S3``."""
    m = {}
    for p, q in phi1.m.items():
        if q not in phi2.m:
            raise DomainError(f"state {q!r} (image of {p!r}) is outside the domain of the second morphism")
        m[p] = phi2.m[q]
    l = {}
    for b, t in phi2.l.items():
        missing = symbols(t) - set(phi1.l)
        if missing:
            raise DomainError(f"experiments {sorted(missing)} are not mapped by the first morphism")
        l[b] = extend_l(phi1.l, t)
    return SepMorphism(m, l)


def compose_sp(psi2: SpMorphism, psi1: SpMorphism) -> SpMorphism:
    m = {}
    for p, q in psi1.m.items():
        if q not in psi2.m:
            raise DomainError(f"state {q!r} is outside the domain of the second morphism")
        m[p] = psi2.m[q]
    n = {}
    for a, b in psi2.n.items():
        if b not in psi1.n:
            raise DomainError(f"property {b} is outside the domain of the first morphism")
        n[a] = psi1.n[b]
    return SpMorphism(m, n)


# ---------------------------------------------------------------- file format

_STATE_LINE = re.compile(r"state\s+(?P<src>\S+)\s*->\s*(?P<dst>\S+)\s*$")
_EXP_LINE = re.compile(r"exp\s+(?P<src>\S+)\s*->\s*(?P<term>.+)$")


def loads_morphism(text: str) -> SepMorphism:
    """Parse ``state p' -> p`` and ``exp a -> <term>`` lines."""
    m: Dict[str, str] = {}
    l: Dict[str, Term] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if not stripped:
            continue
        sm = _STATE_LINE.match(stripped)
        em = _EXP_LINE.match(stripped)
        if sm:
            if sm.group("src") in m:
                raise SepParseError(f"state {sm.group('src')!r} mapped twice", lineno, indent + 1)
            m[sm.group("src")] = sm.group("dst")
        elif em:
            if em.group("src") in l:
                raise SepParseError(f"experiment {em.group('src')!r} mapped twice", lineno, indent + 1)
            col = indent + em.start("term")
            try:
                l[em.group("src")] = parse_term(em.group("term"))
            except ParseError as exc:
                raise SepParseError(exc.message, lineno, col + exc.pos + 1) from None
        else:
            raise SepParseError("expected 'state <p'> -> <p>' or 'exp <a> -> <term>'", lineno, indent + 1)
    return SepMorphism(m, l)


def load_morphism(path: Union[str, Path]) -> SepMorphism:
    return loads_morphism(Path(path).read_text())


def dumps_morphism(phi: SepMorphism) -> str:
    lines = [f"state {p} -> {q}" for p, q in phi.m.items()]
    lines += [f"exp {b} -> {format_term(t)}" for b, t in phi.l.items()]
    return "\n".join(lines) + "\n"
