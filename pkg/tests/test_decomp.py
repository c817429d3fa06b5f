import pytest

from helpers import boolean2, idx, load, orthogroupoids, power, trivial
from orthokit.church import NotZeroCommutative, center
from orthokit.decomp import (
    NotCentral,
    binary_decompose,
    direct_product,
    full_decompose,
    interval,
    interval_algebra,
    meet_with,
    relative_algebra,
    relative_carrier,
    verify_isomorphism,
)
from orthokit.model import OrthokitError

ZC_MODELS = list(orthogroupoids(6, zero_comm=True, dedup="up-to-iso"))


def test_b2_squared_binary_split():
    g = power(2)
    e = idx(g, "(1,0)")
    assert {g.carrier.name(x) for x in interval(g, e)} == {"(0,0)", "(1,0)"}
    d = binary_decompose(g, e)
    assert [f.n for f in d.factors] == [2, 2]
    assert d.iso[g.top] == (d.factors[0].top, d.factors[1].top)
    assert verify_isomorphism(g, d.factors, d.iso) == []


def test_meet_with_is_coordinatewise_on_products():
    g = power(2)
    e = idx(g, "(1,0)")
    for b in range(g.n):
        name = g.carrier.name(b)
        assert g.carrier.name(meet_with(g, e, b)) == f"({name[1]},0)"


def test_full_decomposition_of_b2_cubed():
    g = power(3)
    d = full_decompose(g)
    assert len(d.factors) == 3
    assert all(f.n == 2 for f in d.factors)
    assert len(d.center_atoms) == 3
    pairs = dict(d.iso_names(g))
    # factors keep the parent's names, so each factor's top is its atom
    tops = tuple(f.carrier.name(f.top) for f in d.factors)
    assert pairs["(1,1,1)"] == tops
    assert set(tops) == {"(1,0,0)", "(0,1,0)", "(0,0,1)"}
    assert pairs["(0,0,0)"] == ("(0,0,0)",) * 3


def test_trivial_and_two_element():
    d = full_decompose(trivial())
    assert d.factors == () and d.iso == ((),)
    d = full_decompose(boolean2())
    assert len(d.factors) == 1 and d.factors[0].n == 2


def test_interval_equals_relative_algebra_on_models():
    for g in ZC_MODELS:
        for e in center(g).elements:
            assert interval(g, e) == relative_carrier(g, e)
            assert interval_algebra(g, e) == relative_algebra(g, e)


def test_full_decomposition_sizes_on_models():
    for g in ZC_MODELS:
        d = full_decompose(g)
        size = 1
        for f in d.factors:
            size *= f.n
            assert len(center(f).elements) == 2
        assert size == g.n


def test_non_central_and_non_zero_commutative_are_rejected():
    with pytest.raises(NotZeroCommutative):
        full_decompose(load("remark.txt"))
    for g in ZC_MODELS:
        bad = [e for e in range(g.n) if e not in center(g).elements]
        if bad:
            with pytest.raises(NotCentral):
                binary_decompose(g, bad[0])
            return
    pytest.fail("expected a non-central element among small models")


def test_verify_isomorphism_reports_problems():
    g = power(2)
    d = binary_decompose(g, idx(g, "(1,0)"))
    broken = list(d.iso)
    broken[0], broken[1] = broken[1], broken[0]
    assert verify_isomorphism(g, d.factors, broken)


def test_product_size_limit():
    with pytest.raises(OrthokitError):
        direct_product([boolean2()] * 7)
