import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from subprob.category import (
    BadExperimentImage,
    CovarianceViolation,
    IllDefinedMorphismError,
    SepMorphism,
    SpMorphism,
    UnmappedExperiment,
    UnmappedState,
    compose,
    compose_sp,
    derive_sp_morphism,
    dumps_morphism,
    extend_l,
    identity,
    identity_sp,
    loads_morphism,
    validate_sep_morphism,
    validate_sp_morphism,
)
from subprob.experiments import TAU, Base, Tilde, product, tilde
from subprob.generate import random_pullback, random_sep, random_terms
from subprob.intervals import ONE, DomainError, interval, point
from subprob.properties import derive_sp
from subprob.sep import SepParseError, SepSystem, mu_eval

a, b, tau = Base("a"), Base("b"), Base(TAU)
seeds = st.integers(0, 2**32 - 1)


def chain(seed, length):
    """S_length -> ... -> S_1 -> S_0, each built by pulling back the previous one."""
    rng = np.random.default_rng(seed)
    systems = [random_sep(rng, max_states=3, max_base=3)]
    maps = []
    for i in range(length):
        src, phi = random_pullback(rng, systems[-1], max_states=3, compound=0.3, extras=0, prefix=f"s{i}")
        systems.append(src)
        maps.append(phi)
    return systems, maps


# ---- extension of l -------------------------------------------------------------

def test_extend_l():
    l = {TAU: Base(TAU), "a": Base("x"), "b": Tilde(Base("y"))}
    assert extend_l(l, product([a, b])) == product([Base("x"), Tilde(Base("y"))])
    assert extend_l(l, Tilde(a)) == tilde(Base("x"))
    assert extend_l(l, Tilde(b)) == Base("y")
    assert extend_l(l, tau) == tau
    with pytest.raises(KeyError):
        extend_l(l, Base("c"))


# ---- SEP morphisms ------------------------------------------------------------------

def subentity(dst_value):
    src = SepSystem.build(["p'"], {("a", "p'"): interval("0.2", "0.4")})
    dst = SepSystem.build(["p"], {("a", "p"): dst_value})
    return src, dst, SepMorphism({"p'": "p"}, {TAU: tau, "a": a})


def test_subentity_example():
    src, dst, phi = subentity(interval("0.2", "0.4"))
    assert validate_sep_morphism(src, dst, phi) == []
    src, dst, phi = subentity(point("0.3"))
    assert validate_sep_morphism(src, dst, phi) == [CovarianceViolation("a", "p'")]


def test_identity_is_valid(wood):
    assert validate_sep_morphism(wood, wood, identity(wood)) == []


def test_structural_violations():
    src, dst, _ = subentity(interval("0.2", "0.4"))
    phi = SepMorphism({}, {TAU: tau})
    assert validate_sep_morphism(src, dst, phi) == [UnmappedState("p'"), UnmappedExperiment("a")]
    phi = SepMorphism({"p'": "p"}, {TAU: tau, "a": Base("zz")})
    assert validate_sep_morphism(src, dst, phi) == [BadExperimentImage("a", "zz")]


@settings(max_examples=40)
@given(seeds)
def test_pullback_is_covariant_on_all_terms(seed):
    rng = np.random.default_rng(seed)
    dst = random_sep(rng, max_states=3, max_base=3)
    src, phi = random_pullback(rng, dst)
    assert validate_sep_morphism(src, dst, phi) == []
    for t in random_terms(rng, dst.base, 8, max_factors=4):
        for p in src.states:
            assert mu_eval(dst, t, phi.m[p]) == mu_eval(src, extend_l(phi.l, t), p)
    # the unit is preserved semantically
    for p in src.states:
        assert mu_eval(src, phi.l[TAU], p) == ONE


# ---- related SP morphisms --------------------------------------------------------------

def test_identity_gives_identity(wood):
    sp = derive_sp(wood)
    psi = derive_sp_morphism(identity(wood), wood, wood)
    assert psi == identity_sp(sp)
    assert validate_sp_morphism(sp, sp, psi) == []


@settings(max_examples=40)
@given(seeds)
def test_related_morphism_is_valid(seed):
    rng = np.random.default_rng(seed)
    dst = random_sep(rng, max_states=4, max_base=3)
    src, phi = random_pullback(rng, dst)
    sp_src, sp_dst = derive_sp(src), derive_sp(dst)
    psi = derive_sp_morphism(phi, src, dst)
    assert validate_sp_morphism(sp_src, sp_dst, psi) == []
    assert psi.n[sp_dst.lattice.top] == sp_src.lattice.top


def test_corrupted_n_is_detected(wood):
    sp = derive_sp(wood)
    psi = identity_sp(sp)
    x, y = sp.lattice.top, next(e for e in sp.lattice.elements if e != sp.lattice.top)
    n = dict(psi.n)
    n[x], n[y] = n[y], n[x]
    assert validate_sp_morphism(sp, sp, SpMorphism(psi.m, n)) != []


def test_ill_defined_morphism_is_rejected():
    # not covariant: a and b are equivalent in dst but their images are not
    dst = SepSystem.build(["p"], {("a", "p"): ONE, ("b", "p"): ONE})
    src = SepSystem.build(["q"], {("x", "q"): ONE, ("y", "q"): point("0.5")})
    phi = SepMorphism({"q": "p"}, {TAU: tau, "a": Base("x"), "b": Base("y")})
    assert validate_sep_morphism(src, dst, phi) != []
    with pytest.raises(IllDefinedMorphismError):
        derive_sp_morphism(phi, src, dst)


# ---- category laws ----------------------------------------------------------------------

@settings(max_examples=25)
@given(seeds)
def test_identity_laws(seed):
    (s0, s1), (phi,) = chain(seed, 1)
    assert compose(identity(s0), phi) == phi
    assert compose(phi, identity(s1)) == phi


@settings(max_examples=25)
@given(seeds)
def test_associativity(seed):
    systems, (f1, f2, f3) = chain(seed, 3)
    # f1: S1 -> S0, f2: S2 -> S1, f3: S3 -> S2
    left = compose(compose(f1, f2), f3)
    right = compose(f1, compose(f2, f3))
    assert left == right
    assert validate_sep_morphism(systems[3], systems[0], left) == []


@settings(max_examples=25)
@given(seeds)
def test_functoriality(seed):
    (s0, s1, s2), (f1, f2) = chain(seed, 2)
    sp0, sp1, sp2 = derive_sp(s0), derive_sp(s1), derive_sp(s2)
    psi1 = derive_sp_morphism(f1, s1, s0, sp1, sp0)
    psi2 = derive_sp_morphism(f2, s2, s1, sp2, sp1)
    whole = derive_sp_morphism(compose(f1, f2), s2, s0, sp2, sp0)
    assert whole == compose_sp(psi1, psi2)
    assert validate_sp_morphism(sp2, sp0, whole) == []


def test_compose_rejects_mismatch():
    f = SepMorphism({"p": "q"}, {TAU: tau})
    g = SepMorphism({"r": "s"}, {TAU: tau})
    with pytest.raises(DomainError):
        compose(g, f)


# ---- file format ------------------------------------------------------------------------

def test_morphism_round_trip():
    text = "state p' -> p\nexp tau -> tau\nexp a -> prod(x, ~y)  # split\n"
    phi = loads_morphism(text)
    assert phi.m == {"p'": "p"}
    assert phi.l["a"] == product([Base("x"), Tilde(Base("y"))])
    assert loads_morphism(dumps_morphism(phi)) == phi


@pytest.mark.parametrize("text, line, col", [
    ("state p -> q\nbogus\n", 2, 1),
    ("exp a -> prod(x,\n", 1, 17),
    ("state p -> q\n  state p -> r\n", 2, 3),
])
def test_morphism_parse_errors(text, line, col):
    with pytest.raises(SepParseError) as info:
        loads_morphism(text)
    assert (info.value.line, info.value.column) == (line, col)
