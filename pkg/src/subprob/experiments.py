"""Yes/no-experiment terms closed under inverse and finite product.

Terms are immutable trees of :class:`Base`, :class:`Tilde` and
:class:`Product`.  Any nesting can be constructed directly, but the smart
constructors :func:`tilde` and :func:`product` (and :func:`canonical`) always
return the canonical form:

* ``~~a`` rewrites to ``a``;
* ``~prod(a, b)`` rewrites to ``prod(~a, ~b)``;
* nested products are flattened and duplicate factors dropped.

So every canonical term is a *literal* (``a`` or ``~a``) or a product of at
least two distinct literals.  Deduplicating factors is a quotient the
underlying experiment set need not take; it is harmless because a repeated
factor never changes the union of subset probabilities.

Text grammar::

    term := symbol | '~' term | 'prod(' term (',' term)* ')'
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Tuple, Union

from .intervals import DomainError, ParseError

__all__ = [
    "TAU",
    "Base",
    "Tilde",
    "Product",
    "Term",
    "tilde",
    "product",
    "canonical",
    "is_canonical",
    "literals",
    "factors",
    "symbols",
    "term_key",
    "enumerate_terms",
    "count_terms",
    "parse_term",
    "format_term",
]

TAU = "tau"
_SYMBOL = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True)
class Base:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Tilde:
    inner: "Term"

    def __str__(self):
        return format_term(self)


@dataclass(frozen=True)
class Product:
    factors: FrozenSet["Term"]

    def __str__(self):
        return format_term(self)


Term = Union[Base, Tilde, Product]


def tilde(t: Term) -> Term:
    """Canonical inverse of a canonical term."""
    if isinstance(t, Base):
        return Tilde(t)
    if isinstance(t, Tilde):
        return t.inner
    if isinstance(t, Product):
        return Product(frozenset(tilde(f) for f in t.factors))
    raise TypeError(f"not an experiment term: {t!r}")


def product(ts: Iterable[Term]) -> Term:
    """Canonical product of a non-empty family of canonical terms.

    >>> format_term(product([Base("a"), product([Base("b"), Base("c")])]))
    'prod(a, b, c)'
    """
    lits = set()
    for t in ts:
        lits.update(factors(t))
    if not lits:
        raise DomainError("empty products are not allowed")
    if len(lits) == 1:
        return next(iter(lits))
    return Product(frozenset(lits))


def canonical(t: Term) -> Term:
    """Canonical form of an arbitrary term tree."""
    if isinstance(t, Base):
        return t
    if isinstance(t, Tilde):
        return tilde(canonical(t.inner))
    if isinstance(t, Product):
        if not t.factors:
            raise DomainError("empty products are not allowed")
        return product(canonical(f) for f in t.factors)
    raise TypeError(f"not an experiment term: {t!r}")


def _is_literal(t: Term) -> bool:
    return isinstance(t, Base) or (isinstance(t, Tilde) and isinstance(t.inner, Base))


def is_canonical(t: Term) -> bool:
    if _is_literal(t):
        return True
    if isinstance(t, Product):
        return len(t.factors) >= 2 and all(_is_literal(f) for f in t.factors)
    return False


def factors(t: Term) -> FrozenSet[Term]:
    """Literal factors of a canonical term (a literal is its own factor)."""
    if isinstance(t, Product):
        return t.factors
    return frozenset((t,))


def symbols(t: Term) -> FrozenSet[str]:
    if isinstance(t, Base):
        return frozenset((t.name,))
    if isinstance(t, Tilde):
        return symbols(t.inner)
    return frozenset().union(*(symbols(f) for f in t.factors))


def literals(base: Iterable[str]) -> List[Term]:
    out: List[Term] = []
    for b in sorted(base):
        out.append(Base(b))
        out.append(Tilde(Base(b)))
    return out


def _literal_key(t: Term) -> Tuple[str, int]:
    if isinstance(t, Base):
        return (t.name, 0)
    return (t.inner.name, 1)


def term_key(t: Term) -> Tuple[int, Tuple[Tuple[str, int], ...]]:
    """Total order on canonical terms: fewer factors first, then lexicographic."""
    lits = sorted(_literal_key(f) for f in factors(t))
    return (len(lits), tuple(lits))


def enumerate_terms(base: Iterable[str]) -> Iterator[Term]:
    """Every canonical term over ``base``, in :func:`term_key` order.

    There are ``2**(2n) - 1`` of them for ``n`` symbols, so keep ``n`` small.
    """
    base = set(base)
    if TAU not in base:
        raise DomainError(f"base experiments must include the unit {TAU!r}")
    lits = literals(base)
    for k in range(1, len(lits) + 1):
        for combo in itertools.combinations(lits, k):
            yield combo[0] if k == 1 else Product(frozenset(combo))


def count_terms(n_symbols: int) -> int:
    return 2 ** (2 * n_symbols) - 1


# ---------------------------------------------------------------- text format

def format_term(t: Term) -> str:
    if isinstance(t, Base):
        return t.name
    if isinstance(t, Tilde):
        return "~" + format_term(t.inner)
    if isinstance(t, Product):
        if all(_is_literal(f) for f in t.factors):
            inner = sorted(t.factors, key=_literal_key)
        else:
            inner = sorted(t.factors, key=format_term)
        return "prod(" + ", ".join(format_term(f) for f in inner) + ")"
    raise TypeError(f"not an experiment term: {t!r}")


def parse_term(text: str) -> Term:
    """Parse a term and return its canonical form.

    >>> format_term(parse_term("~prod(burn, ~float)"))
    'prod(~burn, float)'
    """
    parser = _TermParser(text)
    t = parser.term()
    parser.skip()
    if parser.pos != len(text):
        raise ParseError("unexpected trailing input", text, parser.pos)
    return canonical(t)


class _TermParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, ch: str):
        self.skip()
        if not self.text.startswith(ch, self.pos):
            raise ParseError(f"expected {ch!r}", self.text, self.pos)
        self.pos += len(ch)

    def term(self) -> Term:
        self.skip()
        if self.text.startswith("~", self.pos):
            self.pos += 1
            return Tilde(self.term())
        m = _SYMBOL.match(self.text, self.pos)
        if not m:
            raise ParseError("expected an experiment symbol", self.text, self.pos)
        name = m.group(0)
        after = m.end()
        if name == "prod":
            look = after
            while look < len(self.text) and self.text[look].isspace():
                look += 1
            if look < len(self.text) and self.text[look] == "(":
                self.pos = look + 1
                items = [self.term()]
                self.skip()
                while self.text.startswith(",", self.pos):
                    self.pos += 1
                    items.append(self.term())
                self.expect(")")
                return Product(frozenset(items))
        self.pos = after
        return Base(name)
