import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from homschur import formats as fm
from homschur.errors import ConfigInvalid, IndexMismatch
from homschur.homatrix import IndexMap, hg_identity, hg_product
from homschur.laws import random_config, random_free_category, random_index, random_matrix
from homschur.operad import UNIT, IntervalConfig, LittleInterval, operad_compose, theta_compose, validate_config


def T(y, r):
    return LittleInterval(F(y), F(r))


def test_symmetric_pair_is_valid():
    assert validate_config(IntervalConfig.of(("-1/2", "1/4"), ("1/2", "1/4")))


def test_overlap_reported():
    report = validate_config(IntervalConfig.of((0, "1/2"), ("1/4", "1/8")))
    assert not report and "overlap" in report.message


def test_full_radius_reported():
    report = validate_config(IntervalConfig.of((0, 1)))
    assert not report and "radius" in report.message


def test_interval_outside_disc():
    assert not validate_config(IntervalConfig.of(("3/4", "1/2")))


def test_touching_endpoints_overlap():
    # closed images sharing the point 0
    assert not validate_config(IntervalConfig.of(("-1/2", "1/2"), ("1/2", "1/2")))


def test_affine_map():
    assert T("1/2", "1/4")(-1) == F(1, 4)
    assert T("1/2", "1/4").after(T("-1/2", "1/2")) == T("3/8", "1/8")


def test_worked_composition(fixtures):
    outer = fm.parse_config(fm.load_json(fixtures / "config_outer.json"))
    inners = [fm.parse_config(fm.load_json(fixtures / f"config_inner{i}.json")) for i in (1, 2)]
    out = operad_compose(outer, inners)
    assert out.intervals == (T("-1/2", "1/8"), T("3/8", "1/16"), T("5/8", "1/16"))
    assert validate_config(out)


def test_arity_two_three_two():
    rng = random.Random(2)
    out = operad_compose(random_config(rng, 2), [random_config(rng, 3), random_config(rng, 2)])
    assert out.arity == 5


def test_unit_laws():
    c = IntervalConfig.of(("-1/2", "1/4"), ("1/2", "1/4"))
    assert operad_compose(c, [UNIT, UNIT]) == c
    assert operad_compose(UNIT, [c]) == c


def test_invalid_inputs():
    good = IntervalConfig.of((0, "1/2"))
    with pytest.raises(ConfigInvalid):
        operad_compose(good, [good, good])
    with pytest.raises(ConfigInvalid):
        operad_compose(good, [IntervalConfig.of((0, "1/2"), ("1/4", "1/8"))])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_associativity_and_closure(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 3)
    outer = random_config(rng, k)
    inners = [random_config(rng, rng.randint(1, 3)) for _ in range(k)]
    leaves = [[random_config(rng, rng.randint(1, 3)) for _ in range(b.arity)] for b in inners]
    left = operad_compose(operad_compose(outer, inners), [x for g in leaves for x in g])
    right = operad_compose(outer, [operad_compose(b, g) for b, g in zip(inners, leaves)])
    assert left == right
    assert validate_config(left)
    assert left.arity == sum(x.arity for g in leaves for x in g)


# -- theta ------------------------------------------------------------------------------------


def test_theta_unary_is_identity(loops):
    c = IndexMap(loops, ["x", "x"])
    A = random_matrix(random.Random(1), c, c)
    assert theta_compose(IntervalConfig.of((0, "1/2")), [A]) == A
    assert theta_compose(UNIT, [A]) == A


def test_theta_forgets_configuration():
    rng = random.Random(11)
    C = random_free_category(rng, max_path_length=4)
    idx = [random_index(rng, C, 2) for _ in range(4)]
    A, B, D = (random_matrix(rng, idx[i], idx[i + 1]) for i in (2, 1, 0))
    results = {theta_compose(random_config(rng, 3), [A, B, D]) for _ in range(10)}
    assert results == {hg_product(hg_product(A, B), D)}


def test_theta_checks(loops):
    c = IndexMap(loops, ["x"])
    I = hg_identity(c)
    with pytest.raises(IndexMismatch):
        theta_compose(IntervalConfig.of((0, "1/2")), [I, I])
    with pytest.raises(IndexMismatch):
        theta_compose(IntervalConfig.of(("-1/2", "1/4"), ("1/2", "1/4")), [I, hg_identity(IndexMap(loops, ["x", "x"]))])
