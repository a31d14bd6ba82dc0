"""The state property system of a finite SEP.

Two experiments are equivalent when they are certain in exactly the same
states, so each equivalence class (a *property*) is identified with its
certainty set, a subset of the states.  Certainty of a product is the
conjunction of certainty of its factors, so the certainty set of a product
is the intersection of its factors' sets.  The lattice of properties is
therefore the closure of the literal certainty sets under intersection,
ordered by inclusion: meet is intersection (the class of the product of
representatives) and join is the meet of all upper bounds.  This avoids
enumerating the ``2**(2n) - 1`` terms.

Everything is parametrised by the "certainty" set ``A`` (default ``{1}``):
an experiment counts as actual in ``p`` when ``mu(t, p) ⊆ A``.

Completeness of the lattice is the finite kind: every subset of elements
has a meet and a join.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from .experiments import TAU, Base, Term, enumerate_terms, factors, format_term, literals, product, term_key
from .intervals import ONE, UNIT, UnitIntervalSet, format_set, is_subset
from .sep import SepSystem, Violation, mu_eval

__all__ = [
    "certainty_set",
    "literal_certainty_sets",
    "state_preorder",
    "experiment_leq",
    "equivalence_classes",
    "PropertyClass",
    "PropertyLattice",
    "StatePropertySystem",
    "build_lattice",
    "xi_map",
    "derive_sp",
    "derive_sp_general",
    "validate_sp",
    "LatticeViolation",
    "Statprop01Violation",
    "Statprop02Violation",
    "Statprop03Violation",
    "Statprop04Violation",
    "Statprop05Violation",
    "class_table",
    "to_dot",
]

StateSet = FrozenSet[str]


def literal_certainty_sets(sys: SepSystem, A: UnitIntervalSet = ONE) -> Dict[Term, StateSet]:
    out = {}
    for lit in literals(sys.base):
        out[lit] = frozenset(p for p in sys.states if is_subset(mu_eval(sys, lit, p), A))
    return out


def certainty_set(sys: SepSystem, t: Term, A: UnitIntervalSet = ONE) -> StateSet:
    """States in which ``t`` is certain (``mu(t, p) ⊆ A``)."""
    return frozenset(p for p in sys.states if is_subset(mu_eval(sys, t, p), A))


def state_preorder(sys: SepSystem, A: UnitIntervalSet = ONE) -> FrozenSet[Tuple[str, str]]:
    """Pairs ``(p, q)`` with ``p < q``: whatever is certain at ``q`` is certain at ``p``.

    Checking literals is enough since product certainty is a conjunction.
    """
    sets = list(literal_certainty_sets(sys, A).values())
    return frozenset(
        (p, q)
        for p in sys.states
        for q in sys.states
        if all(p in s for s in sets if q in s)
    )


def experiment_leq(sys: SepSystem, a: Term, b: Term, A: UnitIntervalSet = ONE) -> bool:
    return certainty_set(sys, a, A) <= certainty_set(sys, b, A)


def equivalence_classes(sys: SepSystem, A: UnitIntervalSet = ONE) -> Dict[StateSet, List[Term]]:
    """Partition of all canonical terms by certainty set.  Exponential in |base|."""
    lit_sets = literal_certainty_sets(sys, A)
    all_states = frozenset(sys.states)
    classes: Dict[StateSet, List[Term]] = {}
    for t in enumerate_terms(sys.base):
        cs = all_states.intersection(*(lit_sets[f] for f in factors(t)))
        classes.setdefault(cs, []).append(t)
    return classes


@dataclass(frozen=True)
class PropertyClass:
    """An equivalence class of experiments: its certainty set and least member."""

    certainty: StateSet
    representative: Term

    def __str__(self):
        return format_term(self.representative)


@dataclass
class PropertyLattice:
    """A finite lattice with explicit order, meet and join tables.

    Elements are arbitrary hashables.  :func:`build_lattice` uses
    :class:`PropertyClass` elements; :meth:`from_order` builds one by hand.
    ``join`` entries are ``None`` where no upper bound exists, which only
    happens for degenerate certainty sets ``A``.
    """

    elements: Tuple[Hashable, ...]
    leq_pairs: FrozenSet[Tuple[Hashable, Hashable]]
    meet_table: Dict[Tuple[Hashable, Hashable], Hashable]
    join_table: Dict[Tuple[Hashable, Hashable], Optional[Hashable]]
    top: Hashable
    bottom: Hashable

    def leq(self, a, b) -> bool:
        return (a, b) in self.leq_pairs

    def meet(self, a, b):
        return self.meet_table[(a, b)]

    def join(self, a, b):
        return self.join_table[(a, b)]

    def meet_all(self, xs: Iterable[Hashable]):
        acc = self.top
        for x in xs:
            acc = self.meet(acc, x)
        return acc

    def join_all(self, xs: Iterable[Hashable]):
        acc = self.bottom
        for x in xs:
            acc = self.join(acc, x)
            if acc is None:
                return None
        return acc

    def covers(self) -> List[Tuple[Hashable, Hashable]]:
        """Hasse edges ``(a, b)`` with ``a < b`` and nothing strictly between."""
        out = []
        for a in self.elements:
            for b in self.elements:
                if a == b or not self.leq(a, b):
                    continue
                if not any(
                    c != a and c != b and self.leq(a, c) and self.leq(c, b)
                    for c in self.elements
                ):
                    out.append((a, b))
        return out

    def __len__(self):
        return len(self.elements)

    @classmethod
    def from_order(cls, elements: Sequence[Hashable], leq_pairs: Iterable[Tuple[Hashable, Hashable]],
                   top=None, bottom=None) -> "PropertyLattice":
        """Lattice from a partial order given as ``(a, b)`` pairs meaning ``a <= b``.

        Meets and joins are found by brute force over the order.  Reflexive
        pairs are added.  Missing bounds raise ``ValueError``.
        """
        elements = tuple(elements)
        leq = set(leq_pairs) | {(a, a) for a in elements}
        meets, joins = {}, {}
        for a in elements:
            for b in elements:
                lower = [c for c in elements if (c, a) in leq and (c, b) in leq]
                glb = [c for c in lower if all((d, c) in leq for d in lower)]
                upper = [c for c in elements if (a, c) in leq and (b, c) in leq]
                lub = [c for c in upper if all((c, d) in leq for d in upper)]
                if len(glb) != 1 or len(lub) != 1:
                    raise ValueError(f"{a!r} and {b!r} have no unique meet/join")
                meets[(a, b)], joins[(a, b)] = glb[0], lub[0]
        if top is None:
            top = [c for c in elements if all((d, c) in leq for d in elements)][0]
        if bottom is None:
            bottom = [c for c in elements if all((c, d) in leq for d in elements)][0]
        return cls(elements, frozenset(leq), meets, joins, top, bottom)


@dataclass
class StatePropertySystem:
    states: Tuple[str, ...]
    state_leq: FrozenSet[Tuple[str, str]]
    lattice: PropertyLattice
    xi: Dict[str, FrozenSet[Hashable]]
    certainty: UnitIntervalSet = ONE
    warnings: List[str] = field(default_factory=list)

    def class_of(self, sys: SepSystem, t: Term) -> PropertyClass:
        """Lattice element containing ``t`` (``sys`` must be the source SEP)."""
        cs = certainty_set(sys, t, self.certainty)
        return self._by_set[cs]

    @property
    def _by_set(self) -> Dict[StateSet, PropertyClass]:
        return {e.certainty: e for e in self.lattice.elements}


def _representative(target: StateSet, lit_sets: Mapping[Term, StateSet], all_states: StateSet) -> Term:
    # least term in term_key order whose certainty set is exactly target
    cands = sorted((l for l, s in lit_sets.items() if target <= s), key=lambda l: term_key(l))
    for k in range(1, len(cands) + 1):
        for combo in itertools.combinations(cands, k):
            if all_states.intersection(*(lit_sets[c] for c in combo)) == target:
                return combo[0] if k == 1 else product(combo)
    raise AssertionError(f"no term has certainty set {sorted(target)}")


def _closure(sets: Iterable[StateSet]) -> Set[StateSet]:
    closed: Set[StateSet] = set(sets)
    frontier = list(closed)
    while frontier:
        new = []
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c not in closed:
                    closed.add(c)
                    new.append(c)
        frontier = new
    return closed


def build_lattice(sys: SepSystem, A: UnitIntervalSet = ONE) -> PropertyLattice:
    lit_sets = literal_certainty_sets(sys, A)
    all_states = frozenset(sys.states)
    sets = _closure(lit_sets.values())
    classes = {s: PropertyClass(s, _representative(s, lit_sets, all_states)) for s in sets}
    elements = tuple(sorted(classes.values(), key=lambda c: term_key(c.representative)))
    leq = frozenset((a, b) for a in elements for b in elements if a.certainty <= b.certainty)
    meets = {(a, b): classes[a.certainty & b.certainty] for a in elements for b in elements}
    joins = {}
    for a in elements:
        for b in elements:
            ups = [c.certainty for c in elements if a.certainty | b.certainty <= c.certainty]
            joins[(a, b)] = classes[all_states.intersection(*ups)] if ups else None
    top = classes[lit_sets[Base(TAU)]]
    bottom = classes[all_states.intersection(*sets)]
    return PropertyLattice(elements, leq, meets, joins, top, bottom)


def xi_map(sys: SepSystem, lattice: PropertyLattice) -> Dict[str, FrozenSet[PropertyClass]]:
    return {p: frozenset(e for e in lattice.elements if p in e.certainty) for p in sys.states}


def derive_sp(sys: SepSystem) -> StatePropertySystem:
    """The state property system related to ``sys``."""
    return derive_sp_general(sys, ONE)


def derive_sp_general(sys: SepSystem, A: UnitIntervalSet) -> StatePropertySystem:
    """Same construction with ``mu ⊆ A`` in place of ``mu ⊆ {1}``.

    Choices of ``A`` that break the axioms are not rejected; a warning is
    attached and :func:`validate_sp` reports the concrete failures.
    """
    lattice = build_lattice(sys, A)
    warnings = []
    if not is_subset(ONE, A):
        warnings.append(f"1 is not in A = {format_set(A)}: tau is not A-certain, so its class need not be the top")
    if A == UNIT:
        warnings.append("A = [0, 1]: every performable experiment is A-certain everywhere; 0 will be actual")
    elif 0 in A:
        warnings.append(f"0 is in A = {format_set(A)}: ~tau is A-certain, so 0 may be actual")
    if any(e is None for e in lattice.join_table.values()):
        warnings.append("some pairs of properties have no upper bound")
    return StatePropertySystem(
        states=sys.states,
        state_leq=state_preorder(sys, A),
        lattice=lattice,
        xi=xi_map(sys, lattice),
        certainty=A,
        warnings=warnings,
    )


# ---------------------------------------------------------------- validation

@dataclass(frozen=True, repr=False)
class LatticeViolation(Violation):
    detail: str


@dataclass(frozen=True, repr=False)
class Statprop01Violation(Violation):
    state: str


@dataclass(frozen=True, repr=False)
class Statprop02Violation(Violation):
    state: str


@dataclass(frozen=True, repr=False)
class Statprop03Violation(Violation):
    state: str
    a: Hashable
    b: Hashable


@dataclass(frozen=True, repr=False)
class Statprop04Violation(Violation):
    p: str
    q: str


@dataclass(frozen=True, repr=False)
class Statprop05Violation(Violation):
    a: Hashable
    b: Hashable


def _lattice_violations(L: PropertyLattice) -> List[Violation]:
    out: List[Violation] = []
    E = L.elements
    for a in E:
        if not L.leq(a, a):
            out.append(LatticeViolation(f"order not reflexive at {a}"))
        if not L.leq(a, L.top):
            out.append(LatticeViolation(f"{a} is not below the top {L.top}"))
        if not L.leq(L.bottom, a):
            out.append(LatticeViolation(f"the bottom {L.bottom} is not below {a}"))
        for b in E:
            if a != b and L.leq(a, b) and L.leq(b, a):
                out.append(LatticeViolation(f"order not antisymmetric at {a}, {b}"))
            m = L.meet_table.get((a, b))
            if m is None or not (L.leq(m, a) and L.leq(m, b)):
                out.append(LatticeViolation(f"meet of {a}, {b} is not a lower bound"))
            elif not all(L.leq(c, m) for c in E if L.leq(c, a) and L.leq(c, b)):
                out.append(LatticeViolation(f"meet of {a}, {b} is not the greatest lower bound"))
            j = L.join_table.get((a, b))
            if j is None or not (L.leq(a, j) and L.leq(b, j)):
                out.append(LatticeViolation(f"join of {a}, {b} is not an upper bound"))
            elif not all(L.leq(j, c) for c in E if L.leq(a, c) and L.leq(b, c)):
                out.append(LatticeViolation(f"join of {a}, {b} is not the least upper bound"))
    return out


def validate_sp(sp: StatePropertySystem) -> List[Violation]:
    """Check the lattice structure and the five state property axioms.

    Meet-closure of ``xi(p)`` is checked on pairs; for a finite lattice that
    covers every finite family, the empty family being the top.
    """
    L = sp.lattice
    out = _lattice_violations(L)
    for p in sp.states:
        xp = sp.xi[p]
        if L.top not in xp:
            out.append(Statprop01Violation(p))
        if L.bottom in xp:
            out.append(Statprop02Violation(p))
        for a, b in itertools.combinations_with_replacement(L.elements, 2):
            if ((a in xp) and (b in xp)) != (L.meet(a, b) in xp):
                out.append(Statprop03Violation(p, a, b))
    for p in sp.states:
        for q in sp.states:
            if ((p, q) in sp.state_leq) != (sp.xi[q] <= sp.xi[p]):
                out.append(Statprop04Violation(p, q))
    for a in L.elements:
        for b in L.elements:
            actual_implies = all(b in sp.xi[r] for r in sp.states if a in sp.xi[r])
            if L.leq(a, b) != actual_implies:
                out.append(Statprop05Violation(a, b))
    return out


# ---------------------------------------------------------------- export

def _label(e) -> str:
    return str(e)


def class_table(sp: StatePropertySystem) -> str:
    L = sp.lattice
    width = max(5, *(len(_label(e)) for e in L.elements))
    lines = [f"{'class':<{width}}  certainty set", f"{'-' * width}  -------------"]
    for e in L.elements:
        cert = getattr(e, "certainty", None)
        cs = "{" + ", ".join(sorted(cert)) + "}" if cert is not None else "?"
        tag = " (I)" if e == L.top else (" (0)" if e == L.bottom else "")
        lines.append(f"{_label(e):<{width}}  {cs}{tag}")
    lines.append("")
    lines.append("xi:")
    for p in sp.states:
        names = sorted(_label(e) for e in sp.xi[p])
        lines.append(f"  {p}: " + ", ".join(names))
    return "\n".join(lines)


def to_dot(lattice: PropertyLattice, name: str = "properties") -> str:
    """Hasse diagram in Graphviz DOT; edges point up, the top is drawn at the top."""
    ids = {e: f"n{i}" for i, e in enumerate(lattice.elements)}
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for e in lattice.elements:
        label = _label(e).replace('"', r"\"")
        cert = getattr(e, "certainty", None)
        if cert is not None:
            label += "\\n{" + ", ".join(sorted(cert)) + "}"
        lines.append(f'  {ids[e]} [label="{label}"];')
    for a, b in lattice.covers():
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
