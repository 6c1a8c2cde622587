import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from homschur.errors import AmbientMismatch, ComplexInvalid
from homschur.graded import (
    Basis,
    ChainComplex,
    GradedVector,
    as_rational,
    euler_characteristic,
    format_rational,
    homology_betti,
    linear_combine,
    matrix_rank,
    shift_degrees,
    validate_complex,
)
from homschur.laws import mutate_complex, random_complex

B = Basis("V", {"e1": 0, "e2": 1, "e3": 3})


def vec(**terms):
    return GradedVector(B, terms)


def test_additive_inverse():
    v = vec(e1=3, e2="1/2")
    assert linear_combine([(1, v), (-1, v)]).terms == {}


def test_zero_scalar():
    v, w = vec(e1=1), vec(e2=5)
    assert linear_combine([(1, v), (0, w)]) == v


def test_exact_rational_combination():
    out = linear_combine([(Fraction(1, 2), vec(e1=2)), (Fraction(1, 3), vec(e2=3))])
    assert out == vec(e1=1, e2=1)


def test_mixed_ambient_rejected():
    other = GradedVector(Basis("W", {"e1": 0}), {"e1": 1})
    with pytest.raises(AmbientMismatch):
        linear_combine([(1, vec(e1=1)), (1, other)])


def test_zero_coefficients_dropped():
    v = vec(e1=0, e2=2)
    assert v.terms == {"e2": Fraction(2)}


def test_homogeneous_degree_query():
    assert vec(e1=1).degree() == 0
    assert vec(e1=1, e2=1).degree() is None
    assert vec().degree() is None


def test_floats_refused():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_rational_format():
    assert format_rational(Fraction(3, 1)) == "3"
    assert format_rational(Fraction(-6, 4)) == "-3/2"


@pytest.mark.parametrize("n, expected", [(0, 3), (3, 0), (-2, 5)])
def test_shift_degrees(n, expected):
    w = shift_degrees(vec(e3=1), n)
    assert w.basis.degree("e3") == expected


def test_shift_inverse_restores_basis():
    v = vec(e1=1, e3=-2)
    assert shift_degrees(shift_degrees(v, 4), -4) == v


@given(st.integers(-50, 50), st.lists(st.integers(-10, 10), min_size=3, max_size=3))
def test_shift_is_uniform_bijection(n, coeffs):
    v = GradedVector(B, dict(zip(["e1", "e2", "e3"], coeffs)))
    w = shift_degrees(v, n)
    assert w.terms == v.terms
    for k in w.terms:
        assert w.basis.degree(k) == v.basis.degree(k) - n


big = st.integers(-(10**40), 10**40)
rationals = st.builds(Fraction, big, st.integers(1, 10**40))


@given(rationals, rationals, rationals)
def test_rational_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a.denominator > 0


# -- complexes -------------------------------------------------------------------------


def interval():
    return ChainComplex.from_cells({1: ["e"], 0: ["v0", "v1"]}, {"e": {"v1": 1, "v0": -1}})


def test_zero_differential_is_valid():
    cx = ChainComplex.from_cells({0: ["a"], 1: ["b"]}, {})
    assert validate_complex(cx)


def test_interval_valid():
    assert validate_complex(interval())


def test_d_squared_violation_names_offender():
    cx = ChainComplex.from_cells({2: ["e"], 1: ["v"], 0: ["w"]}, {"e": {"v": 1}, "v": {"w": 1}})
    report = validate_complex(cx)
    assert not report
    assert report.offender == "e"
    assert "d(d('e'))" in report.message


def test_degree_violation():
    cx = ChainComplex.from_cells({1: ["e"], 1 - 2: ["w"]}, {"e": {"w": 1}})
    report = validate_complex(cx)
    assert not report and report.offender == "e"


def test_betti_point():
    assert homology_betti(ChainComplex.from_cells({0: ["p"]}, {})) == {0: 1}


def test_betti_interval():
    assert homology_betti(interval()) == {0: 1, 1: 0}


def test_betti_circle():
    assert homology_betti(ChainComplex.from_cells({1: ["e"], 0: ["v"]}, {})) == {0: 1, 1: 1}


def test_betti_rejects_invalid():
    cx = ChainComplex.from_cells({2: ["e"], 1: ["v"], 0: ["w"]}, {"e": {"v": 1}, "v": {"w": 1}})
    with pytest.raises(ComplexInvalid):
        homology_betti(cx)


def test_rank_matches_brute_force():
    rows = [[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(6)], [Fraction(0), Fraction(1), Fraction(1)]]
    assert matrix_rank(rows) == 2


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_random_complex_euler_and_bounds(seed):
    cx, betti = random_complex(random.Random(seed))
    assert validate_complex(cx)
    got = homology_betti(cx)
    assert got == betti
    dims = {d: len(cx.cells(d)) for d in cx.degrees()}
    assert euler_characteristic(dims) == euler_characteristic(got)
    assert all(got[d] <= dims[d] for d in dims)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_mutants_are_rejected(seed):
    rng = random.Random(seed)
    cx, _ = random_complex(rng)
    bad = mutate_complex(rng, cx)
    if bad is not None:
        assert not validate_complex(bad)
