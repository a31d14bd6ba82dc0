"""State experiment probability systems.

A :class:`SepSystem` tabulates the subset probability only on base
experiment symbols.  Values on inverses and products are derived by
:func:`mu_eval`, which makes the product and inverse axioms hold by
construction; :func:`validate_sep` then only has to check that the table is
total and that the unit ``tau`` is certain in every state.

Instance files are line oriented::

    # comment
    states: p1, p2
    experiments: tau, a, b
    mu a p1 = {1}
    mu b p1 = [3/5, 7/10] u {1/4}

``tau`` may be left out of ``experiments:`` and its ``mu`` rows may be
omitted; both are implied, with value ``{1}``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from .experiments import TAU, Base, Product, Term, Tilde, product
from .intervals import (
    ONE,
    DomainError,
    ParseError,
    RationalLike,
    UnitIntervalSet,
    format_set,
    interval,
    is_subset,
    one_minus,
    parse_set,
    to_rational,
    union_all,
)

__all__ = [
    "SepSystem",
    "UnknownSymbolError",
    "UnknownStateError",
    "SepParseError",
    "Violation",
    "MissingEntry",
    "UnitAxiomViolation",
    "MissingUnit",
    "NoStates",
    "UnknownTableKey",
    "InvalidEntry",
    "mu_eval",
    "is_certain",
    "is_performable",
    "is_contained_in",
    "is_close_to_certain",
    "TransferReport",
    "transfer_check",
    "validate_sep",
    "loads_sep",
    "load_sep",
    "dumps_sep",
    "save_sep",
]


class UnknownSymbolError(KeyError):
    pass


class UnknownStateError(KeyError):
    pass


class SepParseError(ParseError):
    """Instance-file error with 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        self.message = message
        ValueError.__init__(self, f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class SepSystem:
    """Finite state set, base experiment symbols and the base table.

    ``table`` maps ``(symbol, state)`` to a :class:`UnitIntervalSet`.  The
    constructor does not enforce the axioms so that broken instances can be
    loaded and reported on; call :func:`validate_sep` for that.
    """

    states: Tuple[str, ...]
    base: Tuple[str, ...]
    table: Mapping[Tuple[str, str], UnitIntervalSet] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "table", dict(self.table))

    @classmethod
    def build(cls, states: Iterable[str], table: Mapping[Tuple[str, str], UnitIntervalSet],
              base: Optional[Iterable[str]] = None) -> "SepSystem":
        """Convenience constructor: adds ``tau`` and its ``{1}`` rows if absent."""
        states = tuple(states)
        if base is None:
            base = []
            for sym, _ in table:
                if sym not in base:
                    base.append(sym)
        base = list(base)
        if TAU not in base:
            base.insert(0, TAU)
        full = dict(table)
        for p in states:
            full.setdefault((TAU, p), ONE)
        return cls(states, tuple(base), full)

    def mu(self, symbol: str, state: str) -> UnitIntervalSet:
        try:
            return self.table[(symbol, state)]
        except KeyError:
            if symbol not in self.base:
                raise UnknownSymbolError(symbol) from None
            if state not in self.states:
                raise UnknownStateError(state) from None
            raise

    def __hash__(self):
        return hash((self.states, self.base, frozenset(self.table.items())))


def mu_eval(sys: SepSystem, t: Term, p: str) -> UnitIntervalSet:
    """Subset probability of an arbitrary term in state ``p``.

    Base symbols are looked up, an inverse reflects ``x -> 1 - x`` and a
    product takes the union over its factors.
    """
    if p not in sys.states:
        raise UnknownStateError(p)
    return _eval(sys, t, p)


def _eval(sys: SepSystem, t: Term, p: str) -> UnitIntervalSet:
    if isinstance(t, Base):
        return sys.mu(t.name, p)
    if isinstance(t, Tilde):
        return one_minus(_eval(sys, t.inner, p))
    if isinstance(t, Product):
        return union_all(_eval(sys, f, p) for f in t.factors)
    raise TypeError(f"not an experiment term: {t!r}")


def is_contained_in(sys: SepSystem, t: Term, p: str, A: UnitIntervalSet) -> bool:
    return is_subset(mu_eval(sys, t, p), A)


def is_certain(sys: SepSystem, t: Term, p: str) -> bool:
    """``mu(t, p) ⊆ {1}``.

    Taken literally this is also true for an experiment that cannot be
    performed (``mu = ∅``); use :func:`is_performable` to tell them apart.
    """
    return is_subset(mu_eval(sys, t, p), ONE)


def is_performable(sys: SepSystem, t: Term, p: str) -> bool:
    return bool(mu_eval(sys, t, p))


def is_close_to_certain(sys: SepSystem, t: Term, p: str, epsilon: RationalLike) -> bool:
    eps = to_rational(epsilon)
    if not 0 <= eps <= 1:
        raise DomainError(f"epsilon must lie in [0, 1], got {eps}")
    return is_subset(mu_eval(sys, t, p), interval(1 - eps, 1))


@dataclass(frozen=True)
class TransferReport:
    A: UnitIntervalSet
    product_side: bool
    component_side: bool

    @property
    def agree(self) -> bool:
        return self.product_side == self.component_side


def transfer_check(sys: SepSystem, factors: Iterable[Term], p: str, A: UnitIntervalSet) -> TransferReport:
    """Evaluate both sides of ``mu(prod F, p) ⊆ A  <=>  mu(f, p) ⊆ A for all f``.

    ``agree`` is always true; this exists as a runtime self-check.
    """
    factors = list(factors)
    if not factors:
        raise DomainError("transfer_check needs at least one factor")
    lhs = is_subset(mu_eval(sys, product(factors), p), A)
    rhs = all(is_subset(mu_eval(sys, f, p), A) for f in factors)
    return TransferReport(A, lhs, rhs)


# ---------------------------------------------------------------- validation

class Violation:
    """Base class for reported problems; violations are data, not errors."""

    def __str__(self):
        fields = ", ".join(str(v) for v in self.__dict__.values())
        return f"{type(self).__name__}({fields})"


@dataclass(frozen=True, repr=False)
class MissingEntry(Violation):
    symbol: str
    state: str


@dataclass(frozen=True, repr=False)
class UnitAxiomViolation(Violation):
    state: str
    value: UnitIntervalSet


@dataclass(frozen=True, repr=False)
class MissingUnit(Violation):
    symbol: str = TAU


@dataclass(frozen=True, repr=False)
class NoStates(Violation):
    pass


@dataclass(frozen=True, repr=False)
class UnknownTableKey(Violation):
    symbol: str
    state: str


@dataclass(frozen=True, repr=False)
class InvalidEntry(Violation):
    symbol: str
    state: str
    value: object


def validate_sep(sys: SepSystem) -> List[Violation]:
    out: List[Violation] = []
    if not sys.states:
        out.append(NoStates())
    if TAU not in sys.base:
        out.append(MissingUnit())
    for b in sys.base:
        for p in sys.states:
            v = sys.table.get((b, p))
            if v is None:
                out.append(MissingEntry(b, p))
            elif not isinstance(v, UnitIntervalSet):
                out.append(InvalidEntry(b, p, v))
            elif b == TAU and v != ONE:
                out.append(UnitAxiomViolation(p, v))
    known_b, known_p = set(sys.base), set(sys.states)
    for (b, p) in sys.table:
        if b not in known_b or p not in known_p:
            out.append(UnknownTableKey(b, p))
    return out


# ---------------------------------------------------------------- file format

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_MU = re.compile(r"mu\s+(?P<sym>\S+)\s+(?P<state>\S+)\s*=\s*(?P<value>.*)$")


def _name_list(body: str, lineno: int, col0: int) -> List[str]:
    names = []
    offset = col0
    for chunk in body.split(","):
        name = chunk.strip()
        col = offset + (len(chunk) - len(chunk.lstrip())) + 1
        if not _NAME.fullmatch(name):
            raise SepParseError(f"invalid identifier {name!r}", lineno, col)
        if name in names:
            raise SepParseError(f"duplicate identifier {name!r}", lineno, col)
        names.append(name)
        offset += len(chunk) + 1
    return names


def loads_sep(text: str) -> SepSystem:
    states: Optional[List[str]] = None
    base: Optional[List[str]] = None
    table: Dict[Tuple[str, str], UnitIntervalSet] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if not stripped:
            continue
        if stripped.startswith("states:"):
            if states is not None:
                raise SepParseError("duplicate 'states:' line", lineno, indent + 1)
            states = _name_list(stripped[7:], lineno, indent + 7)
        elif stripped.startswith("experiments:"):
            if base is not None:
                raise SepParseError("duplicate 'experiments:' line", lineno, indent + 1)
            base = _name_list(stripped[12:], lineno, indent + 12)
        elif stripped.startswith("mu"):
            m = _MU.match(stripped)
            if not m:
                raise SepParseError("expected 'mu <experiment> <state> = <set>'", lineno, indent + 1)
            sym, st = m.group("sym"), m.group("state")
            if base is None or states is None:
                raise SepParseError("'mu' line before 'states:' and 'experiments:'", lineno, indent + 1)
            if sym not in base and sym != TAU:
                raise SepParseError(f"unknown experiment {sym!r}", lineno, indent + m.start("sym") + 1)
            if st not in states:
                raise SepParseError(f"unknown state {st!r}", lineno, indent + m.start("state") + 1)
            if (sym, st) in table:
                raise SepParseError(f"duplicate entry for ({sym}, {st})", lineno, indent + 1)
            vcol = indent + m.start("value")
            try:
                table[(sym, st)] = parse_set(m.group("value"))
            except ParseError as exc:
                raise SepParseError(exc.message, lineno, vcol + exc.pos + 1) from None
        else:
            raise SepParseError("expected 'states:', 'experiments:' or 'mu'", lineno, indent + 1)
    if states is None:
        raise SepParseError("missing 'states:' line", 1, 1)
    if base is None:
        raise SepParseError("missing 'experiments:' line", 1, 1)
    if TAU not in base:
        base.insert(0, TAU)
    for p in states:
        table.setdefault((TAU, p), ONE)
    return SepSystem(tuple(states), tuple(base), table)


def load_sep(path: Union[str, Path]) -> SepSystem:
    return loads_sep(Path(path).read_text())


def dumps_sep(sys: SepSystem) -> str:
    lines = [
        "states: " + ", ".join(sys.states),
        "experiments: " + ", ".join(sys.base),
    ]
    for b in sys.base:
        for p in sys.states:
            v = sys.table.get((b, p))
            if v is None or (b == TAU and v == ONE):
                continue
            lines.append(f"mu {b} {p} = {format_set(v)}")
    return "\n".join(lines) + "\n"


def save_sep(sys: SepSystem, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_sep(sys))
