from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from subprob.experiments import TAU, Base, Tilde, canonical, product, tilde
from subprob.generate import random_sep, random_terms, random_unit_interval_set
from subprob.intervals import EMPTY, ONE, ZERO, DomainError, interval, one_minus, parse_set, point, union_all
from subprob.sep import (
    MissingEntry,
    SepParseError,
    SepSystem,
    UnitAxiomViolation,
    UnknownStateError,
    UnknownSymbolError,
    dumps_sep,
    is_certain,
    is_close_to_certain,
    is_performable,
    loads_sep,
    mu_eval,
    transfer_check,
    validate_sep,
)

from strategies import raw_terms, unit_sets

a, b, tau = Base("a"), Base("b"), Base(TAU)
seeds = st.integers(0, 2**32 - 1)


def one_state(**entries):
    return SepSystem.build(["p"], {(k, "p"): v for k, v in entries.items()})


# ---- evaluation ------------------------------------------------------------------

def test_wood_product_is_certain(wood):
    burn, flt = Base("burn"), Base("float")
    assert mu_eval(wood, product([burn, flt]), "dry_light") == ONE
    assert is_certain(wood, burn, "dry_light")
    assert is_certain(wood, flt, "dry_light")
    assert is_certain(wood, product([burn, flt]), "dry_light")
    assert not is_certain(wood, product([burn, flt]), "wet_light")


def test_inverse_of_unit_is_zero(wood):
    for p in wood.states:
        assert mu_eval(wood, Tilde(tau), p) == ZERO
        assert is_certain(wood, tau, p)


def test_product_with_inverse():
    sys_ = one_state(a=point("0.3"), b=interval("0.6", "0.7"))
    assert mu_eval(sys_, product([a, Tilde(b)]), "p") == interval("0.3", "0.4")


def test_lookup_errors():
    sys_ = one_state(a=ONE)
    with pytest.raises(UnknownSymbolError):
        mu_eval(sys_, Base("zzz"), "p")
    with pytest.raises(UnknownStateError):
        mu_eval(sys_, a, "q")


def test_is_certain_false_below_one():
    assert not is_certain(one_state(a=interval("0.99", 1)), a, "p")


def test_unperformable_counts_as_certain_but_not_performable():
    sys_ = one_state(a=EMPTY)
    assert is_certain(sys_, a, "p")
    assert not is_performable(sys_, a, "p")
    assert is_performable(sys_, tau, "p")


def test_close_to_certain():
    assert is_close_to_certain(one_state(a=interval("0.98", 1)), a, "p", "0.05")
    assert not is_close_to_certain(one_state(a=point("0.9")), a, "p", "0.05")
    with pytest.raises(DomainError):
        is_close_to_certain(one_state(a=ONE), a, "p", F(3, 2))


@given(unit_sets())
def test_epsilon_zero_is_certainty(V):
    sys_ = one_state(a=V)
    assert is_close_to_certain(sys_, a, "p", 0) == is_certain(sys_, a, "p")


def test_transfer_examples(wood):
    r = transfer_check(wood, [Base("burn"), Base("float")], "dry_light", ONE)
    assert r.product_side and r.component_side and r.agree

    sys_ = one_state(a=point("0.95"), b=point("0.85"))
    r = transfer_check(sys_, [a, b], "p", interval("0.9", 1))
    assert (r.product_side, r.component_side, r.agree) == (False, False, True)

    c = point("0.4")
    sys_ = one_state(a=c, b=c)
    r = transfer_check(sys_, [a, b, Tilde(Tilde(a))], "p", c)
    assert r.product_side and r.component_side


def test_transfer_needs_factors(wood):
    with pytest.raises(DomainError):
        transfer_check(wood, [], "dry_light", ONE)


# ---- laws on random systems -----------------------------------------------------------

@settings(max_examples=60)
@given(seeds, raw_terms)
def test_inverse_reflects(seed, t):
    rng = np.random.default_rng(seed)
    sys_ = random_sep(rng, max_base=4)
    t = canonical(_rename(t, sys_.base))
    for p in sys_.states:
        assert mu_eval(sys_, tilde(t), p) == one_minus(mu_eval(sys_, t, p))
        assert mu_eval(sys_, Tilde(Tilde(t)), p) == mu_eval(sys_, t, p)


def _rename(t, base):
    # map the strategy's symbols onto the symbols of the drawn system
    names = sorted(base)
    table = {s: names[i % len(names)] for i, s in enumerate(["tau", "a", "b", "c"])}
    table["tau"] = TAU
    if isinstance(t, Base):
        return Base(table[t.name])
    if isinstance(t, Tilde):
        return Tilde(_rename(t.inner, base))
    return type(t)(frozenset(_rename(f, base) for f in t.factors))


@settings(max_examples=60)
@given(seeds)
def test_product_laws_on_random_systems(seed):
    rng = np.random.default_rng(seed)
    sys_ = random_sep(rng)
    fs = random_terms(rng, sys_.base, int(rng.integers(1, 5)))
    eps = F(int(rng.integers(0, 101)), 100)
    A = random_unit_interval_set(rng)
    for p in sys_.states:
        prod = product(fs)
        assert mu_eval(sys_, prod, p) == union_all(mu_eval(sys_, f, p) for f in fs)
        assert is_certain(sys_, prod, p) == all(is_certain(sys_, f, p) for f in fs)
        assert is_close_to_certain(sys_, prod, p, eps) == all(is_close_to_certain(sys_, f, p, eps) for f in fs)
        assert transfer_check(sys_, fs, p, A).agree


def test_empty_factor_drops_out_of_union():
    sys_ = one_state(a=EMPTY, b=interval("0.2", "0.3"))
    assert mu_eval(sys_, product([a, b]), "p") == interval("0.2", "0.3")


# ---- validation -----------------------------------------------------------------------

def test_validate_wood(wood):
    assert validate_sep(wood) == []


def test_validate_missing_entry():
    sys_ = SepSystem(("p1", "p2"), (TAU, "a"),
                     {(TAU, "p1"): ONE, (TAU, "p2"): ONE, ("a", "p1"): ONE})
    assert validate_sep(sys_) == [MissingEntry("a", "p2")]


def test_validate_unit_axiom():
    sys_ = SepSystem(("p",), (TAU,), {(TAU, "p"): interval("0.9", 1)})
    assert validate_sep(sys_) == [UnitAxiomViolation("p", interval("0.9", 1))]
    assert "UnitAxiomViolation(p" in str(validate_sep(sys_)[0])


# ---- file format ------------------------------------------------------------------------

EXAMPLE = """\
states: p1, p2
experiments: tau, a, b
mu a p1 = {1}
mu a p2 = {0}
mu b p1 = [3/5, 7/10] u {1/4}
mu b p2 = empty
"""


def test_load_example():
    sys_ = loads_sep(EXAMPLE)
    assert sys_.states == ("p1", "p2")
    assert sys_.base == (TAU, "a", "b")
    assert sys_.mu("b", "p1") == parse_set("{1/4} u [0.6, 0.7]")
    assert sys_.mu(TAU, "p2") == ONE
    assert validate_sep(sys_) == []


def test_tau_is_implied():
    sys_ = loads_sep("states: p\nexperiments: a\nmu a p = {1/2}\n")
    assert sys_.base == (TAU, "a")
    assert sys_.mu(TAU, "p") == ONE


def test_missing_row_loads_and_is_reported():
    sys_ = loads_sep("states: p, q\nexperiments: a\nmu a p = {1/2}\n")
    assert validate_sep(sys_) == [MissingEntry("a", "q")]


@pytest.mark.parametrize("text, line, col", [
    ("states: p\nexperiments: a\nmu a p = [0.5, 0.2]\n", 3, 10),
    ("states: p\nexperiments: a\nmu a q = {1}\n", 3, 6),
    ("states: p\nexperiments: a\nmu z p = {1}\n", 3, 4),
    ("states: p\nexperiments: a\nfoo\n", 3, 1),
    ("states: p, 1x\nexperiments: a\n", 1, 12),
    ("experiments: a\nmu a p = {1}\n", 2, 1),
    ("states: p\nexperiments: a\nmu a p = {1}\nmu a p = {0}\n", 4, 1),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(SepParseError) as info:
        loads_sep(text)
    assert (info.value.line, info.value.column) == (line, col)


@settings(max_examples=50)
@given(seeds)
def test_round_trip(seed):
    sys_ = random_sep(np.random.default_rng(seed))
    again = loads_sep(dumps_sep(sys_))
    assert again == sys_
    assert dumps_sep(again) == dumps_sep(sys_)


def test_round_trip_keeps_bad_unit_rows():
    sys_ = SepSystem(("p",), (TAU,), {(TAU, "p"): interval("0.9", 1)})
    assert loads_sep(dumps_sep(sys_)) == sys_
