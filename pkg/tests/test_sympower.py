import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homschur import formats as fm
from homschur.category import IDENTITY, build_free_category
from homschur.errors import ArityMismatch, ConventionMismatch, NotHomogeneous, ParityViolation, SymArityExceeded
from homschur.graded import GradedVector
from homschur.homatrix import CobordismElement, HomMatrix, IndexMap, cob_identity, hg_act, hg_identity, hg_product
from homschur.laws import _schur_setting, random_representation, random_sym
from homschur.sympower import (
    AVERAGED,
    ORBIT_SUM,
    HGAlgebra,
    ModuleSpace,
    Permutation,
    SymElement,
    canonicalize,
    koszul_sign_oracle,
    printed_sign,
    schur_include,
    sign_comparison,
    sorting_permutation,
    sym_act,
    sym_class,
    sym_product,
)


# -- signs and canonical forms ------------------------------------------------------------------


def test_even_degrees_sort_with_plus_sign():
    assert canonicalize(["c", "a", "b"], [2, 0, -4]) == (1, ("a", "b", "c"))


def test_single_odd_swap():
    assert canonicalize(["v", "u"], [1, 3]) == (-1, ("u", "v"))


def test_repeated_odd_factor_vanishes():
    assert canonicalize(["u", "u"], [1, 1]) is None
    assert canonicalize(["u", "u"], [2, 2]) == (1, ("u", "u"))


@pytest.mark.parametrize(
    "degrees, sigma, expected",
    [
        ([0, 2, 4], (2, 0, 1), 1),
        ([1, 1], (1, 0), -1),
        ([1, 3, 5], (0, 1, 2), 1),
    ],
)
def test_oracle_examples(degrees, sigma, expected):
    assert koszul_sign_oracle(degrees, Permutation(sigma)) == expected


@settings(max_examples=300)
@given(st.lists(st.tuples(st.integers(0, 5), st.integers(-3, 3)), min_size=1, max_size=6))
def test_canonicalize_agrees_with_oracle(pairs):
    degree_of = {}
    for k, d in pairs:
        degree_of.setdefault(k, d)
    keys = [k for k, _ in pairs]
    degs = [degree_of[k] for k in keys]
    out = canonicalize(keys, degs)
    if any(keys.count(k) > 1 and degree_of[k] % 2 for k in keys):
        assert out is None
        return
    sign, ks = out
    assert list(ks) == sorted(keys)
    assert sign == koszul_sign_oracle(degs, sorting_permutation(keys))
    assert canonicalize(ks, sorted(degs, key=lambda _: 0) and [degree_of[k] for k in ks]) == (1, ks)


def test_permutation_algebra():
    s = Permutation((2, 0, 1))
    assert (s * s.inverse()).images == (0, 1, 2)
    assert len(list(Permutation.all(4))) == 24


@settings(max_examples=100)
@given(st.lists(st.integers(-3, 3).map(lambda d: 2 * d), min_size=1, max_size=5), st.data())
def test_printed_sign_trivial_in_even_mode(da, data):
    db = data.draw(st.lists(st.integers(-3, 3).map(lambda d: 2 * d), min_size=len(da), max_size=len(da)))
    for sigma in Permutation.all(len(da)):
        assert printed_sign(da, db, sigma) == 1


def test_sign_comparison_report():
    odd = sign_comparison([1, 1], [1, 1])
    assert any(not row["agree"] for row in odd)
    even = sign_comparison([2, 0], [0, 2])
    assert all(row["agree"] and row["printed"] == 1 for row in even)


# -- products ------------------------------------------------------------------------------------


@pytest.fixture
def hgx(loops):
    c = IndexMap(loops, ["x", "x"])
    return c, HGAlgebra(c)


def E(c, i, j, key, coeff=1):
    C = c.category
    return HomMatrix(c, c, {(i, j): C.morphism(c[j], c[i], {key: coeff})})


@pytest.mark.parametrize("conv", [AVERAGED, ORBIT_SUM])
def test_m1_is_the_algebra_product(hgx, conv):
    c, A = hgx
    a = E(c, 0, 1, ("f",), 2) + E(c, 1, 1, IDENTITY, 1)
    b = E(c, 1, 0, ("g",), 3)
    lhs = sym_product(sym_class(A, [a], conv), sym_class(A, [b], conv))
    assert lhs == sym_class(A, [hg_product(a, b)], conv)


def test_m2_even_expansion(hgx):
    c, A = hgx
    a1, a2 = E(c, 0, 1, ("f",)), E(c, 1, 1, ("g",), 2)
    b1, b2 = E(c, 1, 0, ("g",)), E(c, 1, 1, IDENTITY, 5)
    lhs = sym_product(sym_class(A, [a1, a2]), sym_class(A, [b1, b2]))
    half = Fraction(1, 2)
    rhs = half * sym_class(A, [hg_product(a1, b1), hg_product(a2, b2)]) + half * sym_class(
        A, [hg_product(a1, b2), hg_product(a2, b1)]
    )
    assert lhs == rhs
    assert not lhs.is_zero()


def test_square_times_square(hgx):
    c, A = hgx
    u, v = E(c, 0, 0, ("f",)), E(c, 0, 1, ("g",))
    lhs = sym_product(sym_class(A, [u, u]), sym_class(A, [v, v]))
    uv = hg_product(u, v)
    assert lhs == sym_class(A, [uv, uv])


def test_mixed_parity_factor_rejected():
    C = build_free_category([("p", 0)], [("u", "p", "p", 1)], 2)
    c = IndexMap(C, ["p"])
    mixed = HomMatrix(c, c, {(0, 0): C.morphism("p", "p", {("u",): 1, IDENTITY: 1})})
    with pytest.raises(NotHomogeneous):
        sym_class(HGAlgebra(c), [mixed, mixed])


def test_identity_with_unequal_dims_is_accepted(even_cat):
    c = IndexMap(even_cat, ["x", "y"])
    I = hg_identity(c)
    assert {I.effective_degree(i, i, IDENTITY) for i in range(2)} == {-2, 0}
    assert not sym_class(HGAlgebra(c), [I, I]).is_zero()


def test_arity_and_convention_mismatch(hgx):
    c, A = hgx
    x = sym_class(A, [hg_identity(c)])
    y = sym_class(A, [hg_identity(c), hg_identity(c)])
    with pytest.raises(ArityMismatch):
        sym_product(x, y)
    with pytest.raises(ConventionMismatch):
        sym_product(y, sym_class(A, [hg_identity(c), hg_identity(c)], ORBIT_SUM))


def test_arity_cap(hgx):
    c, A = hgx
    big = sym_class(A, [E(c, 0, 0, IDENTITY)] * 9)
    with pytest.raises(SymArityExceeded):
        sym_product(big, big)
    small = sym_class(A, [E(c, 0, 0, IDENTITY)] * 3)
    with pytest.raises(SymArityExceeded):
        sym_product(small, small, max_arity=2)
    assert sym_product(small, small, max_arity=3) == small


def test_odd_repeated_factor_class_is_zero():
    C = build_free_category([("p", 0)], [("u", "p", "p", 1)], 2)
    c = IndexMap(C, ["p"])
    A = HGAlgebra(c)
    u = HomMatrix(c, c, {(0, 0): C.morphism("p", "p", {("u",): 1})})
    assert sym_class(A, [u, u]).is_zero()


@pytest.mark.parametrize("conv", [AVERAGED, ORBIT_SUM])
@pytest.mark.parametrize("m", [2, 3])
def test_sym_associativity_random(conv, m):
    rng = random.Random(m * 101 + len(conv))
    for _ in range(8):
        C, c = _schur_setting(rng, 3)
        A = HGAlgebra(c)
        x, y, z = (random_sym(rng, A, m, conv) for _ in range(3))
        assert sym_product(sym_product(x, y), z) == sym_product(x, sym_product(y, z))


# -- action on S^m V -----------------------------------------------------------------------------------


def test_m1_act_is_hg_act(even_cat, even_rep):
    c = IndexMap(even_cat, ["x", "y"])
    A, V = HGAlgebra(c), ModuleSpace(even_rep, c)
    a = HomMatrix(c, c, {(1, 0): even_cat.morphism("x", "y", {("f",): 1}), (1, 1): even_cat.identity("y")})
    v = GradedVector(V.basis, {(0, "a"): 2, (1, "b"): 1})
    assert sym_act(sym_class(A, [a]), sym_class(V, [v])) == sym_class(V, [hg_act(even_rep, a, v)])


def test_identity_factors_fix_v(even_cat, even_rep):
    c = IndexMap(even_cat, ["x", "y"])
    A, V = HGAlgebra(c), ModuleSpace(even_rep, c)
    I = hg_identity(c)
    v1 = GradedVector(V.basis, {(0, "a"): 1})
    v2 = GradedVector(V.basis, {(1, "b"): 3})
    v = sym_class(V, [v1, v2])
    assert sym_act(sym_class(A, [I, I]), v) == v
    assert sym_act(sym_class(A, [I, I], ORBIT_SUM), sym_class(V, [v1, v2], ORBIT_SUM)) == 2 * sym_class(
        V, [v1, v2], ORBIT_SUM
    )


@pytest.mark.parametrize("m", [2, 3])
def test_module_law_random(m):
    rng = random.Random(77 + m)
    for _ in range(6):
        C, c = _schur_setting(rng, 2)
        rep = random_representation(rng, C, max_dim=2, even=True)
        A, V = HGAlgebra(c), ModuleSpace(rep, c)
        a, b = random_sym(rng, A, m, AVERAGED), random_sym(rng, A, m, AVERAGED)
        v = random_sym(rng, V, m, AVERAGED)
        assert sym_act(sym_product(a, b), v) == sym_act(a, sym_act(b, v))


# -- the cobordism inclusion ---------------------------------------------------------------------------


def test_identity_inclusion(even_cat):
    c = IndexMap(even_cat, ["x"])
    assert schur_include(cob_identity(c)) == sym_class(HGAlgebra(c), [hg_identity(c)])


def test_inclusion_fixture(fixtures, even_cat):
    a = fm.parse_cobordism(fm.load_json(fixtures / "cob_a.json"), even_cat)
    b = fm.parse_cobordism(fm.load_json(fixtures / "cob_b.json"), even_cat)
    from homschur.homatrix import cob_compose

    for conv, scale in ((ORBIT_SUM, 1), (AVERAGED, Fraction(1, 2))):
        lhs = sym_product(schur_include(a, convention=conv), schur_include(b, convention=conv))
        assert lhs == scale * schur_include(cob_compose(a, b), convention=conv)
        assert not lhs.is_zero()


def test_inclusion_arity_and_parity(fixtures):
    C = fm.parse_category(fm.load_json(fixtures / "cat_odd.json"))
    e = fm.parse_cobordism(fm.load_json(fixtures / "cob_odd.json"), C)
    with pytest.raises(ParityViolation):
        schur_include(e)
    with pytest.raises(ArityMismatch):
        schur_include(e, 3, even_mode=False)
