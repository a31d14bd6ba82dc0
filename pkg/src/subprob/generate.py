"""Random instances for property tests, acceptance runs and demos.

All generators take a ``numpy.random.Generator`` so runs are reproducible.
Random morphisms are built by pull-back: the target system is drawn first
and the source table is defined from it, so covariance holds by
construction.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

import numpy as np

from .category import SepMorphism
from .experiments import TAU, Base, Term, Tilde, literals, product
from .intervals import ONE, ZERO, UnitIntervalSet, normalize, one_minus
from .sep import SepSystem

__all__ = [
    "random_rational",
    "random_unit_interval_set",
    "random_sep",
    "random_terms",
    "random_pullback",
]


def random_rational(rng: np.random.Generator, max_den: int = 100) -> Fraction:
    den = int(rng.integers(1, max_den + 1))
    return Fraction(int(rng.integers(0, den + 1)), den)


def random_unit_interval_set(rng: np.random.Generator, max_components: int = 4,
                             max_den: int = 100, p_empty: float = 0.05,
                             p_point: float = 0.3) -> UnitIntervalSet:
    """Union of up to ``max_components`` random intervals and points."""
    if rng.random() < p_empty:
        return normalize([])
    k = int(rng.integers(1, max_components + 1))
    pairs = []
    for _ in range(k):
        a = random_rational(rng, max_den)
        if rng.random() < p_point:
            pairs.append((a, a))
        else:
            b = random_rational(rng, max_den)
            pairs.append((min(a, b), max(a, b)))
    return normalize(pairs)


def _entry(rng: np.random.Generator) -> UnitIntervalSet:
    # weight the special values so certainty and near-certainty actually occur
    r = rng.random()
    if r < 0.3:
        return ONE
    if r < 0.4:
        return ZERO
    if r < 0.5:
        lo = Fraction(int(rng.integers(85, 100)), 100)
        return normalize([(lo, 1)])
    return random_unit_interval_set(rng)


def random_sep(rng: np.random.Generator, max_states: int = 5, max_base: int = 4,
               min_states: int = 1, prefix: str = "") -> SepSystem:
    """Random valid system with ``|Σ| <= max_states`` and ``|base| <= max_base`` (tau included)."""
    n_states = int(rng.integers(min_states, max_states + 1))
    n_base = int(rng.integers(1, max_base + 1))
    states = tuple(f"{prefix}p{i}" for i in range(n_states))
    base = (TAU,) + tuple(f"{prefix}e{i}" for i in range(n_base - 1))
    table = {}
    for b in base:
        for p in states:
            table[(b, p)] = ONE if b == TAU else _entry(rng)
    return SepSystem(states, base, table)


def random_terms(rng: np.random.Generator, base, k: int, max_factors: int = 3) -> List[Term]:
    lits = literals(base)
    out = []
    for _ in range(k):
        n = int(rng.integers(1, max_factors + 1))
        idx = rng.choice(len(lits), size=n)
        out.append(product(lits[i] for i in idx))
    return out


def random_pullback(rng: np.random.Generator, dst: SepSystem, max_states: int = 4,
                    compound: float = 0.5, extras: int = 1,
                    prefix: str = "s") -> Tuple[SepSystem, SepMorphism]:
    """Random source system with a valid morphism into ``dst``.

    With probability ``compound`` a base symbol is sent to an inverse or a
    product of fresh source symbols instead of a single one.
    """
    n_states = int(rng.integers(1, max_states + 1))
    states = tuple(f"{prefix}q{i}" for i in range(n_states))
    m = {q: dst.states[int(rng.integers(len(dst.states)))] for q in states}
    base = [TAU]
    table = {(TAU, q): ONE for q in states}
    l = {}
    counter = 0

    def fresh():
        nonlocal counter
        name = f"{prefix}x{counter}"
        counter += 1
        base.append(name)
        return name

    for b in dst.base:
        pulled = {q: dst.mu(b, m[q]) for q in states}
        mode = "plain"
        if rng.random() < compound:
            mode = ["tilde", "product", "split"][int(rng.integers(3))]
        if b == TAU and mode == "plain":
            l[b] = Base(TAU)
            continue
        s = fresh()
        if mode == "plain":
            for q in states:
                table[(s, q)] = pulled[q]
            l[b] = Base(s)
        elif mode == "tilde":
            for q in states:
                table[(s, q)] = one_minus(pulled[q])
            l[b] = Tilde(Base(s))
        elif mode == "product":
            t = fresh()
            for q in states:
                table[(s, q)] = pulled[q]
                table[(t, q)] = pulled[q]
            l[b] = product([Base(s), Base(t)])
        else:
            # one factor carries the whole set, the other a piece of it
            t = fresh()
            for q in states:
                V = pulled[q]
                table[(s, q)] = V
                table[(t, q)] = UnitIntervalSet([V.components[0]]) if V else V
            l[b] = product([Base(s), Base(t)])
    for _ in range(extras):
        e = fresh()
        for q in states:
            table[(e, q)] = _entry(rng)
    return SepSystem(states, tuple(base), table), SepMorphism(m, l)
