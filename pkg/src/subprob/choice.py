"""Acts of choice: the standard convex-combination picture and a simulator.

The first half works in exact rationals and contrasts the classical model,
where a product experiment's probability is a weighted average of its
factors, with the subset-valued model.  The second half is a Monte Carlo
simulator of the repeated-experiment procedure for a product: each session
picks one factor, fixes a hidden context ``c`` drawn from that factor's
subset probability and then runs Bernoulli(``c``) trials.  The set of
session limits should reproduce ``mu(prod F, p)``.

Simulation is floating point; everything else here is exact.

Per-session randomness comes from ``numpy.random.SeedSequence(seed).spawn``:
session ``i`` always uses child ``i``, so sequential and parallel runs give
identical results.
"""
from __future__ import annotations

import csv
import io
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .experiments import Term, format_term, product, term_key
from .intervals import (
    DomainError,
    RationalLike,
    UnitIntervalSet,
    convex_hull,
    to_rational,
    union_all,
)
from .sep import SepSystem, mu_eval

__all__ = [
    "ChoiceWeights",
    "convex_combination",
    "Prop1Report",
    "prop1_diagnostic",
    "attainable_hull",
    "SimulationError",
    "SimulationPolicy",
    "uniform_context",
    "FrequencySequence",
    "Session",
    "simulate_session",
    "RecoveryReport",
    "recover_subset",
    "distance_to_set",
]


@dataclass(frozen=True)
class ChoiceWeights:
    """Probabilities ``x_i`` of choosing factor ``i``; they sum to exactly 1."""

    weights: Tuple[Fraction, ...]

    def __init__(self, weights: Sequence[RationalLike]):
        ws = tuple(to_rational(w) for w in weights)
        if not ws:
            raise DomainError("need at least one weight")
        if any(not 0 <= w <= 1 for w in ws):
            raise DomainError(f"weights must lie in [0, 1]: {ws}")
        if sum(ws) != 1:
            raise DomainError(f"weights must sum to 1, got {sum(ws)}")
        object.__setattr__(self, "weights", ws)

    def __len__(self):
        return len(self.weights)

    @property
    def all_positive(self) -> bool:
        return all(w > 0 for w in self.weights)


def convex_combination(weights: ChoiceWeights, probs: Sequence[RationalLike]) -> Fraction:
    """``sum_i x_i * probs_i`` computed exactly."""
    probs = [to_rational(v) for v in probs]
    if len(probs) != len(weights):
        raise DomainError(f"{len(weights)} weights but {len(probs)} probabilities")
    if any(not 0 <= v <= 1 for v in probs):
        raise DomainError("probabilities must lie in [0, 1]")
    return sum((x * v for x, v in zip(weights.weights, probs)), Fraction(0))


@dataclass(frozen=True)
class Prop1Report:
    weights: ChoiceWeights
    grid_step: Fraction
    # grid vectors with weighted sum 1 but some entry below 1
    counterexamples: Tuple[Tuple[Fraction, ...], ...]

    @property
    def implication_holds(self) -> bool:
        """``sum x_i mu_i = 1  =>  mu_j = 1 for all j`` held on the whole grid."""
        return not self.counterexamples

    @property
    def counterexample(self) -> Optional[Tuple[Fraction, ...]]:
        return self.counterexamples[0] if self.counterexamples else None

    @property
    def confirmed(self) -> bool:
        """The implication holds exactly when every weight is positive."""
        return self.implication_holds == self.weights.all_positive


def prop1_diagnostic(weights: ChoiceWeights, grid_step: RationalLike) -> Prop1Report:
    """Exhaustive search of probability vectors on a grid of ``grid_step``.

    >>> r = prop1_diagnostic(ChoiceWeights([0, 1]), Fraction(1, 10))
    >>> r.confirmed, (Fraction(1, 2), Fraction(1)) in r.counterexamples
    (True, True)
    """
    step = to_rational(grid_step)
    if step <= 0 or (1 / step).denominator != 1:
        raise DomainError(f"grid step must divide 1, got {step}")
    n_steps = int(1 / step)
    # integer arithmetic on the common denominator keeps the search fast
    den = math.lcm(*(w.denominator for w in weights.weights))
    xs = [int(w * den) for w in weights.weights]
    target = den * n_steps
    found = []
    for ks in itertools.product(range(n_steps + 1), repeat=len(xs)):
        if sum(x * k for x, k in zip(xs, ks)) == target and min(ks) < n_steps:
            found.append(tuple(k * step for k in ks))
    return Prop1Report(weights, step, tuple(found))


def attainable_hull(probs: Sequence[UnitIntervalSet]) -> UnitIntervalSet:
    """Product probabilities reachable by identifiable acts of choice.

    Every weighting of every choice of contexts gives a number in the convex
    hull of the union, and every number there is reached by some weighting.
    """
    if not probs:
        raise DomainError("need at least one factor")
    for v in probs:
        if not v:
            raise DomainError("every factor must have a non-empty probability set")
    return convex_hull(union_all(probs))


# ---------------------------------------------------------------- simulation

class SimulationError(RuntimeError):
    pass


def uniform_context(rng: np.random.Generator, V: UnitIntervalSet) -> float:
    """A component chosen uniformly, then a point uniformly within it."""
    lo, hi = V.components[int(rng.integers(len(V.components)))]
    if lo == hi:
        return float(lo)
    return float(lo) + (float(hi) - float(lo)) * float(rng.random())


@dataclass(frozen=True)
class SimulationPolicy:
    """How sessions are run.

    ``factor_weights`` defaults to a uniform choice of factor per session;
    ``context_sampler(rng, V)`` draws the hidden context from ``V``.
    """

    seed: int = 0
    factor_weights: Optional[Tuple[float, ...]] = None
    context_sampler: Callable[[np.random.Generator, UnitIntervalSet], float] = uniform_context

    def session_seeds(self, n: int) -> List[np.random.SeedSequence]:
        return np.random.SeedSequence(self.seed).spawn(n)


@dataclass(frozen=True)
class FrequencySequence:
    yes_counts: np.ndarray = field(repr=False)

    @property
    def trials(self) -> int:
        return len(self.yes_counts)

    @property
    def frequencies(self) -> np.ndarray:
        return self.yes_counts / np.arange(1, self.trials + 1)

    @property
    def final(self) -> float:
        return float(self.yes_counts[-1]) / self.trials


@dataclass(frozen=True)
class Session:
    factor: Term
    context: float
    sequence: FrequencySequence

    @property
    def final_frequency(self) -> float:
        return self.sequence.final


def _ordered(factors) -> List[Term]:
    fs = sorted(set(factors), key=term_key)
    if not fs:
        raise DomainError("need at least one factor")
    return fs


def _run_session(sys, factors, p, policy, n_trials, seed_seq) -> Session:
    rng = np.random.default_rng(seed_seq)
    if policy.factor_weights is None:
        j = int(rng.integers(len(factors)))
    else:
        w = np.asarray(policy.factor_weights, dtype=float)
        if len(w) != len(factors):
            raise DomainError("factor_weights must match the number of factors")
        j = int(rng.choice(len(factors), p=w / w.sum()))
    f = factors[j]
    V = mu_eval(sys, f, p)
    if not V:
        raise SimulationError(f"experiment {format_term(f)} cannot be performed in state {p}")
    c = policy.context_sampler(rng, V)
    draws = rng.random(n_trials) < c
    return Session(f, c, FrequencySequence(np.cumsum(draws, dtype=np.int64)))


def simulate_session(sys: SepSystem, factors, p: str, policy: SimulationPolicy,
                     n_trials: int, session_index: int = 0) -> Session:
    """One session of the product procedure: choose, fix a context, repeat."""
    if n_trials < 1:
        raise DomainError("n_trials must be at least 1")
    seed_seq = policy.session_seeds(session_index + 1)[session_index]
    return _run_session(sys, _ordered(factors), p, policy, n_trials, seed_seq)


def distance_to_set(x: float, V: UnitIntervalSet) -> float:
    best = float("inf")
    for lo, hi in V.components:
        lo, hi = float(lo), float(hi)
        d = lo - x if x < lo else (x - hi if x > hi else 0.0)
        best = min(best, d)
    return best


@dataclass
class RecoveryReport:
    target: UnitIntervalSet
    delta: float
    sessions: List[Session]
    soundness: bool
    coverage: bool
    uncovered: List[Tuple[Fraction, Fraction]]
    span_ok: bool
    span_gaps: List[Tuple[Tuple[Fraction, Fraction], float, float]]

    @property
    def final_frequencies(self) -> np.ndarray:
        return np.array([s.final_frequency for s in self.sessions])

    def summary(self) -> str:
        f = self.final_frequencies
        lines = [
            f"target set: {self.target}",
            f"sessions: {len(self.sessions)}  delta: {self.delta}",
            f"final frequency min/mean/max: {f.min():.6f} / {f.mean():.6f} / {f.max():.6f}",
            f"soundness: {'pass' if self.soundness else 'FAIL'}",
            f"coverage: {'pass' if self.coverage else 'FAIL'}",
            f"span: {'pass' if self.span_ok else 'FAIL'}",
        ]
        for comp in self.uncovered:
            lines.append(f"  uncovered component [{comp[0]}, {comp[1]}]")
        for comp, lo, hi in self.span_gaps:
            lines.append(f"  span of [{comp[0]}, {comp[1]}] only reached [{lo:.6f}, {hi:.6f}]")
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["session", "factor", "context", "final_frequency"])
        for i, s in enumerate(self.sessions):
            w.writerow([i, format_term(s.factor), repr(s.context), repr(s.final_frequency)])
        return buf.getvalue()


def recover_subset(sys: SepSystem, factors, p: str, policy: SimulationPolicy,
                   n_sessions: int, n_trials: int, delta: float,
                   workers: int = 1) -> RecoveryReport:
    """Run sessions and compare their limits with ``mu(prod factors, p)``.

    Soundness: every final frequency is within ``delta`` of the target.
    Coverage: every component of the target is within ``delta`` of some
    final frequency.  For non-degenerate components the frequencies near
    the component must also reach within ``delta`` of both ends.
    """
    if delta <= 0:
        raise DomainError("delta must be positive")
    if n_sessions < 1 or n_trials < 1:
        raise DomainError("session and trial counts must be at least 1")
    fs = _ordered(factors)
    target = mu_eval(sys, product(fs), p)
    seeds = policy.session_seeds(n_sessions)

    def run(i):
        return _run_session(sys, fs, p, policy, n_trials, seeds[i])

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sessions = list(pool.map(run, range(n_sessions)))
    else:
        sessions = [run(i) for i in range(n_sessions)]

    finals = [s.final_frequency for s in sessions]
    soundness = all(distance_to_set(x, target) <= delta for x in finals)
    uncovered = []
    span_gaps = []
    for lo, hi in target.components:
        flo, fhi = float(lo), float(hi)
        near = [x for x in finals if flo - delta <= x <= fhi + delta]
        if not near:
            uncovered.append((lo, hi))
            continue
        if lo != hi and (min(near) > flo + delta or max(near) < fhi - delta):
            span_gaps.append(((lo, hi), min(near), max(near)))
    return RecoveryReport(target, delta, sessions, soundness, not uncovered,
                          uncovered, not span_gaps and not uncovered, span_gaps)
