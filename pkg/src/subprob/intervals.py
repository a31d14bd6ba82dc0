"""Exact subsets of [0, 1] built from finitely many closed intervals.

A :class:`UnitIntervalSet` is the value space of the subset probability.
Endpoints are :class:`fractions.Fraction` so that set equality is decidable;
nothing in this module uses a floating-point tolerance.

Only closed intervals (and points, stored as degenerate intervals) are
representable.  Open or half-open pieces and more exotic measurable sets are
deliberately out of reach.

Textual form::

    set  := 'empty' | term (' u ' term)*
    term := '[' rational ',' rational ']' | '{' rational '}'

where a rational is a decimal literal (``0.25``) or a fraction (``3/5``).

>>> V = parse_set("{1/4} u [3/5, 7/10]")
>>> print(one_minus(V))
[3/10, 2/5] u {3/4}
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence, Tuple, Union

__all__ = [
    "DomainError",
    "ParseError",
    "UnitIntervalSet",
    "EMPTY",
    "ONE",
    "ZERO",
    "UNIT",
    "to_rational",
    "normalize",
    "interval",
    "point",
    "union",
    "union_all",
    "intersect",
    "intersect_all",
    "is_subset",
    "contains",
    "is_empty",
    "is_singleton",
    "one_minus",
    "convex_hull",
    "parse_set",
    "parse_rational",
    "format_set",
    "format_rational",
]

RationalLike = Union[Fraction, int, str, float]
Component = Tuple[Fraction, Fraction]


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class ParseError(ValueError):
    """Malformed textual input.  ``pos`` is a 0-based character offset."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.text = text
        self.pos = pos
        self.message = message
        super().__init__(f"{message} (column {pos + 1})" if text else message)


def to_rational(x: RationalLike) -> Fraction:
    """Coerce ``x`` to a Fraction.

    Floats go through their shortest decimal ``repr`` so ``0.2`` becomes
    ``1/5`` rather than the binary approximation.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not probabilities")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


class UnitIntervalSet:
    """Canonical finite union of closed subintervals of [0, 1].

    ``components`` is a tuple of ``(lo, hi)`` Fraction pairs, sorted, pairwise
    disjoint and separated by gaps.  Instances are immutable and hashable;
    two sets are equal exactly when they contain the same points.

    Build instances with :func:`normalize`, :func:`interval`, :func:`point`
    or :func:`parse_set`; the constructor trusts its input only when
    ``_canonical=True``.
    """

    __slots__ = ("_components", "_hash")

    def __init__(self, intervals: Iterable[Sequence[RationalLike]] = (), *, _canonical: bool = False):
        if _canonical:
            comps = tuple(intervals)
        else:
            comps = _merge(_checked_pairs(intervals))
        object.__setattr__(self, "_components", comps)
        object.__setattr__(self, "_hash", hash(comps))

    def __setattr__(self, name, value):
        raise AttributeError("UnitIntervalSet is immutable")

    @property
    def components(self) -> Tuple[Component, ...]:
        return self._components

    def __eq__(self, other):
        if not isinstance(other, UnitIntervalSet):
            return NotImplemented
        return self._components == other._components

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"UnitIntervalSet({format_set(self)!r})"

    def __str__(self):
        return format_set(self)

    def __bool__(self):
        return bool(self._components)

    def __len__(self):
        return len(self._components)

    def __iter__(self):
        return iter(self._components)

    def __contains__(self, x):
        return contains(self, x)

    def __or__(self, other):
        return union(self, other)

    def __and__(self, other):
        return intersect(self, other)

    def __le__(self, other):
        return is_subset(self, other)

    def __ge__(self, other):
        return is_subset(other, self)

    @property
    def min(self) -> Fraction:
        if not self._components:
            raise DomainError("empty set has no minimum")
        return self._components[0][0]

    @property
    def max(self) -> Fraction:
        if not self._components:
            raise DomainError("empty set has no maximum")
        return self._components[-1][1]


def _checked_pairs(intervals) -> list:
    out = []
    for pair in intervals:
        try:
            lo, hi = pair
        except (TypeError, ValueError):
            raise DomainError(f"expected a (lo, hi) pair, got {pair!r}") from None
        lo, hi = to_rational(lo), to_rational(hi)
        if not (0 <= lo <= hi <= 1):
            raise DomainError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
        out.append((lo, hi))
    return out


def _merge(pairs) -> Tuple[Component, ...]:
    # closed intervals sharing a point merge; a gap of positive length does not
    pairs = sorted(pairs)
    merged: list = []
    for lo, hi in pairs:
        if merged and lo <= merged[-1][1]:
            if hi > merged[-1][1]:
                merged[-1] = (merged[-1][0], hi)
        else:
            merged.append((lo, hi))
    return tuple(merged)


def normalize(intervals: Iterable[Sequence[RationalLike]]) -> UnitIntervalSet:
    """Canonical set from a list of ``(lo, hi)`` pairs.

    >>> print(normalize([(0.2, 0.5), (0.4, 0.9)]))
    [1/5, 9/10]
    """
    return UnitIntervalSet(intervals)


def interval(lo: RationalLike, hi: RationalLike) -> UnitIntervalSet:
    return UnitIntervalSet([(lo, hi)])


def point(c: RationalLike) -> UnitIntervalSet:
    return UnitIntervalSet([(c, c)])


EMPTY = UnitIntervalSet((), _canonical=True)
ONE = point(1)
ZERO = point(0)
UNIT = interval(0, 1)


def union(V: UnitIntervalSet, W: UnitIntervalSet) -> UnitIntervalSet:
    if not V:
        return W
    if not W:
        return V
    return UnitIntervalSet(_merge(V.components + W.components), _canonical=True)


def union_all(sets: Iterable[UnitIntervalSet]) -> UnitIntervalSet:
    comps: list = []
    for s in sets:
        comps.extend(s.components)
    return UnitIntervalSet(_merge(comps), _canonical=True)


def intersect(V: UnitIntervalSet, W: UnitIntervalSet) -> UnitIntervalSet:
    a, b = V.components, W.components
    i = j = 0
    out = []
    while i < len(a) and j < len(b):
        lo = max(a[i][0], b[j][0])
        hi = min(a[i][1], b[j][1])
        if lo <= hi:
            out.append((lo, hi))
        if a[i][1] < b[j][1]:
            i += 1
        else:
            j += 1
    # pieces of disjoint, gapped inputs are themselves disjoint and gapped
    return UnitIntervalSet(tuple(out), _canonical=True)


def intersect_all(sets: Iterable[UnitIntervalSet]) -> UnitIntervalSet:
    """Intersection of a non-empty family."""
    it = iter(sets)
    try:
        acc = next(it)
    except StopIteration:
        raise DomainError("intersection of an empty family is not defined here") from None
    for s in it:
        acc = intersect(acc, s)
    return acc


def is_subset(V: UnitIntervalSet, W: UnitIntervalSet) -> bool:
    """``V ⊆ W`` (non-strict).  The empty set is a subset of everything."""
    b = W.components
    j = 0
    for lo, hi in V.components:
        # every piece of V is connected, so it must sit inside one piece of W
        while j < len(b) and b[j][1] < lo:
            j += 1
        if j == len(b) or not (b[j][0] <= lo and hi <= b[j][1]):
            return False
    return True


def contains(V: UnitIntervalSet, x: RationalLike) -> bool:
    x = to_rational(x)
    if not 0 <= x <= 1:
        raise DomainError(f"{x} is not in [0, 1]")
    return any(lo <= x <= hi for lo, hi in V.components)


def is_empty(V: UnitIntervalSet) -> bool:
    return not V.components


def is_singleton(V: UnitIntervalSet) -> Optional[Fraction]:
    """The unique element of ``V`` if it has exactly one, else ``None``."""
    if len(V.components) == 1 and V.components[0][0] == V.components[0][1]:
        return V.components[0][0]
    return None


def one_minus(V: UnitIntervalSet) -> UnitIntervalSet:
    """Reflection ``{x in [0,1] : 1 - x in V}``."""
    comps = tuple((1 - hi, 1 - lo) for lo, hi in reversed(V.components))
    return UnitIntervalSet(comps, _canonical=True)


def convex_hull(V: UnitIntervalSet) -> UnitIntervalSet:
    if not V.components:
        raise DomainError("convex hull of the empty set is undefined")
    return UnitIntervalSet(((V.min, V.max),), _canonical=True)


# ---------------------------------------------------------------- text format

_RATIONAL = re.compile(r"\s*(\d+\s*/\s*\d+|\d+(?:\.\d*)?|\.\d+)\s*")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL.fullmatch(text)
    if not m:
        raise ParseError(f"not a rational literal: {text!r}")
    body = m.group(1).replace(" ", "")
    try:
        return Fraction(body)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_set(V: UnitIntervalSet) -> str:
    if not V.components:
        return "empty"
    parts = []
    for lo, hi in V.components:
        if lo == hi:
            parts.append("{" + format_rational(lo) + "}")
        else:
            parts.append(f"[{format_rational(lo)}, {format_rational(hi)}]")
    return " u ".join(parts)


_TERM = re.compile(
    r"\s*(?:\[(?P<lo>[^,\]\[{}]*),(?P<hi>[^\]\[{}]*)\]|\{(?P<pt>[^{}\[\]]*)\})\s*"
)


def parse_set(text: str) -> UnitIntervalSet:
    """Parse the textual set grammar.  Errors carry the offending column."""
    if text.strip() == "empty":
        return EMPTY
    pos = 0
    pairs = []
    n = len(text)
    while True:
        m = _TERM.match(text, pos)
        if not m:
            raise ParseError("expected '[lo, hi]' or '{c}'", text, _skip_ws(text, pos))
        try:
            if m.group("pt") is not None:
                c = _field(m.group("pt"), text, m.start("pt"))
                lo = hi = c
            else:
                lo = _field(m.group("lo"), text, m.start("lo"))
                hi = _field(m.group("hi"), text, m.start("hi"))
            _checked_pairs([(lo, hi)])
        except DomainError as exc:
            raise ParseError(str(exc), text, _skip_ws(text, m.start())) from None
        pairs.append((lo, hi))
        pos = m.end()
        if pos >= n:
            break
        if text[pos] == "u" and pos + 1 < n and text[pos + 1].isspace():
            pos += 1
            continue
        raise ParseError("expected ' u ' between terms", text, pos)
    return normalize(pairs)


def _field(body: str, text: str, offset: int) -> Fraction:
    try:
        return parse_rational(body)
    except ParseError:
        raise ParseError(f"not a rational literal: {body.strip()!r}", text, _skip_ws(text, offset)) from None


def _skip_ws(text: str, pos: int) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    return pos
