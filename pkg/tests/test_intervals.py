from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from subprob.intervals import (
    EMPTY,
    ONE,
    UNIT,
    DomainError,
    ParseError,
    contains,
    convex_hull,
    format_set,
    intersect,
    interval,
    is_empty,
    is_singleton,
    is_subset,
    normalize,
    one_minus,
    parse_set,
    point,
    to_rational,
    union,
)

from strategies import unit_sets


# ---- membership oracle ------------------------------------------------------
# A finite union of closed intervals is determined by membership at its
# endpoints and at one point inside each gap between consecutive endpoints.

def _member(pairs, x):
    return any(lo <= x <= hi for lo, hi in pairs)


def _probe_points(*pair_lists):
    crit = sorted({F(0), F(1)} | {e for pairs in pair_lists for pair in pairs for e in pair})
    mids = [(a + b) / 2 for a, b in zip(crit, crit[1:])]
    return crit + mids


def _same_set(pairs_a, pairs_b):
    return all(_member(pairs_a, x) == _member(pairs_b, x) for x in _probe_points(pairs_a, pairs_b))


# ---- normalize ----------------------------------------------------------------

def test_normalize_merges_overlaps():
    assert normalize([(F("0.2"), F("0.5")), (F("0.4"), F("0.9"))]).components == ((F(1, 5), F(9, 10)),)


def test_normalize_empty():
    assert normalize([]) == EMPTY
    assert is_empty(normalize([]))


def test_normalize_sorts_and_keeps_points():
    V = normalize([("0.3", "0.3"), ("0.1", "0.2")])
    assert V.components == ((F(1, 10), F(1, 5)), (F(3, 10), F(3, 10)))


def test_normalize_merges_touching_closed_intervals():
    assert normalize([(0, F(1, 2)), (F(1, 2), 1)]) == UNIT


@pytest.mark.parametrize("pair", [(F(1, 2), F(1, 5)), (-F(1, 10), F(1, 2)), (0, F(11, 10))])
def test_normalize_rejects_bad_endpoints(pair):
    with pytest.raises(DomainError):
        normalize([pair])


def test_floats_are_read_as_decimals():
    assert to_rational(0.2) == F(1, 5)
    assert normalize([(0.98, 1)]) == interval(F(49, 50), 1)


@given(st.lists(st.tuples(st.integers(0, 20), st.integers(0, 20)), max_size=6))
def test_normalize_matches_oracle_and_is_idempotent(raw):
    pairs = [(F(min(a, b), 20), F(max(a, b), 20)) for a, b in raw]
    V = normalize(pairs)
    assert _same_set(pairs, V.components)
    assert normalize(V.components) == V
    comps = V.components
    for (lo1, hi1), (lo2, hi2) in zip(comps, comps[1:]):
        assert hi1 < lo2


@given(unit_sets(), unit_sets())
def test_equal_sets_are_structurally_equal(V, W):
    assert (V == W) == _same_set(V.components, W.components)


# ---- union / intersect / subset ---------------------------------------------

def test_union_examples():
    assert union(ONE, ONE) == ONE
    assert union(point("0.3"), point("0.7")).components == ((F(3, 10), F(3, 10)), (F(7, 10), F(7, 10)))
    V = interval("0.1", "0.4")
    assert union(EMPTY, V) == V


def test_subset_examples():
    assert is_subset(ONE, ONE)
    assert is_subset(interval("0.98", 1), interval(1 - F("0.05"), 1))
    assert not is_subset(union(point("0.3"), point("0.7")), ONE)


@given(unit_sets())
def test_empty_is_subset_of_everything(W):
    assert is_subset(EMPTY, W)


@given(unit_sets(), unit_sets())
def test_union_and_intersection_match_oracle(V, W):
    U = union(V, W)
    I = intersect(V, W)
    for x in _probe_points(V.components, W.components):
        assert contains(U, x) == (contains(V, x) or contains(W, x))
        assert contains(I, x) == (contains(V, x) and contains(W, x))


@given(unit_sets(), unit_sets())
def test_subset_matches_oracle(V, W):
    expected = all(_member(W.components, x) for x in _probe_points(V.components, W.components)
                   if _member(V.components, x))
    assert is_subset(V, W) == expected


@given(unit_sets(), unit_sets(), unit_sets())
def test_distributive_lattice_laws(U, V, W):
    assert union(V, W) == union(W, V)
    assert intersect(V, W) == intersect(W, V)
    assert union(U, union(V, W)) == union(union(U, V), W)
    assert intersect(U, intersect(V, W)) == intersect(intersect(U, V), W)
    assert union(V, intersect(V, W)) == V
    assert intersect(V, union(V, W)) == V
    assert intersect(U, union(V, W)) == union(intersect(U, V), intersect(U, W))
    assert union(U, intersect(V, W)) == intersect(union(U, V), union(U, W))


def test_contains_rejects_out_of_range():
    with pytest.raises(DomainError):
        contains(UNIT, F(3, 2))


def test_is_singleton():
    assert is_singleton(ONE) == 1
    assert is_singleton(interval(0, 1)) is None
    assert is_singleton(union(point(0), point(1))) is None
    assert is_singleton(EMPTY) is None


# ---- reflection ---------------------------------------------------------------

def test_one_minus_examples():
    assert one_minus(interval("0.2", "0.5")) == interval("0.5", "0.8")
    assert one_minus(UNIT) == UNIT
    assert one_minus(EMPTY) == EMPTY


@given(unit_sets())
def test_one_minus_matches_pointwise_definition(V):
    R = one_minus(V)
    for x in _probe_points(V.components, R.components):
        assert contains(R, x) == contains(V, 1 - x)


@given(unit_sets())
def test_one_minus_involution(V):
    assert one_minus(one_minus(V)) == V


@given(unit_sets(), unit_sets())
def test_one_minus_monotone(V, W):
    if is_subset(V, W):
        assert is_subset(one_minus(V), one_minus(W))
    U = union(V, W)
    assert is_subset(one_minus(V), one_minus(U))


@given(st.lists(unit_sets(), min_size=1, max_size=5))
def test_one_minus_commutes_with_intersection(Vs):
    acc = Vs[0]
    acc_reflected = one_minus(Vs[0])
    for V in Vs[1:]:
        acc = intersect(acc, V)
        acc_reflected = intersect(acc_reflected, one_minus(V))
    assert one_minus(acc) == acc_reflected


# ---- convex hull ---------------------------------------------------------------

def test_convex_hull_examples():
    assert convex_hull(union(point("0.3"), point("0.7"))) == interval("0.3", "0.7")
    assert convex_hull(ONE) == interval(1, 1)
    assert convex_hull(union(interval("0.1", "0.2"), point("0.9"))) == interval("0.1", "0.9")


def test_convex_hull_of_empty_is_an_error():
    with pytest.raises(DomainError):
        convex_hull(EMPTY)


# ---- text format -----------------------------------------------------------------

def test_parse_example():
    V = parse_set("{1/4} u [3/5, 7/10]")
    assert V.components == ((F(1, 4), F(1, 4)), (F(3, 5), F(7, 10)))
    assert format_set(V) == "{1/4} u [3/5, 7/10]"


def test_parse_decimals_and_empty():
    assert parse_set("[0.6, 0.7]") == interval(F(3, 5), F(7, 10))
    assert parse_set("empty") == EMPTY
    assert parse_set("{1}") == ONE


@pytest.mark.parametrize("text, col", [
    ("[0.5, 0.2]", 1),
    ("[0.5, 1.2]", 1),
    ("{1/4} v [0, 1]", 7),
    ("[a, 1]", 2),
    ("", 1),
    ("{1/0}", 2),
])
def test_parse_errors_report_columns(text, col):
    with pytest.raises(ParseError) as info:
        parse_set(text)
    assert info.value.pos + 1 == col


@given(unit_sets())
def test_round_trip(V):
    assert parse_set(format_set(V)) == V


@settings(max_examples=50)
@given(unit_sets())
def test_operators(V):
    assert (V | EMPTY) == V
    assert (V & UNIT) == V
    assert V <= UNIT
    assert hash(parse_set(str(V))) == hash(V)
