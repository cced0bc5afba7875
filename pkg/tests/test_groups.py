"""Group construction, element arithmetic, subgroup lattices, quotients."""

from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from zerosum import (
    EmptyFactors,
    FactorBelowTwo,
    Group,
    NonDivisibleChain,
    NotASubgroup,
    ParseError,
    abelian_group_types,
    all_subgroups,
    elt_order,
    format_element,
    format_group,
    make_group,
    parse_element,
    parse_group,
    quotient,
    quotient_iso_type,
    subgroup_from_elements,
    subgroup_generated,
    trivial_group,
)

SMALL_FACTOR_LISTS = [(2,), (3,), (4,), (5,), (6,), (12,), (2, 2), (2, 4), (3, 3), (2, 2, 2), (2, 6)]


def test_constructor_rejects_bad_factor_lists():
    with pytest.raises(EmptyFactors):
        make_group([])
    with pytest.raises(FactorBelowTwo):
        make_group([1, 2])
    with pytest.raises(NonDivisibleChain):
        make_group([2, 3])
    with pytest.raises(NonDivisibleChain):
        make_group([4, 2])


def test_trivial_group_is_the_one_exception():
    t = trivial_group()
    assert t.order == 1 and t.exponent == 1 and t.rank == 0


@pytest.mark.parametrize("factors", SMALL_FACTOR_LISTS)
def test_order_exponent_rank(factors):
    g = make_group(factors)
    expected_order = 1
    for f in factors:
        expected_order *= f
    assert g.order == expected_order
    assert g.exponent == factors[-1]
    assert g.rank == len(factors)


def test_parse_format_round_trip():
    for text in ["c2", "c7", "c2xc4", "c2xc2xc2", "c3xc3"]:
        g = parse_group(text)
        assert format_group(g) == text
    with pytest.raises(ParseError):
        parse_group("d4")
    with pytest.raises(ParseError):
        parse_group("c2x")


@pytest.mark.parametrize("factors", SMALL_FACTOR_LISTS)
def test_index_round_trip_and_coordinates(factors):
    g = make_group(factors)
    seen = set()
    for i in range(g.order):
        e = g.element_from_index(i)
        assert e.index == i
        assert all(0 <= c < f for c, f in zip(e.coords, factors))
        seen.add(e.coords)
    assert len(seen) == g.order


@pytest.mark.parametrize("factors", [(6,), (2, 4), (3, 3)])
def test_element_arithmetic_matches_coordinate_model(factors):
    g = make_group(factors)
    for a, b in product(range(g.order), repeat=2):
        ea, eb = g.element_from_index(a), g.element_from_index(b)
        s = ea + eb
        assert s.coords == tuple((x + y) % f for x, y, f in zip(ea.coords, eb.coords, factors))
        assert (ea - eb).coords == tuple((x - y) % f for x, y, f in zip(ea.coords, eb.coords, factors))
        assert (-ea + ea).index == 0


@given(st.sampled_from(SMALL_FACTOR_LISTS), st.data())
@settings(max_examples=60, deadline=None)
def test_element_order_divides_exponent(factors, data):
    g = make_group(factors)
    idx = data.draw(st.integers(0, g.order - 1))
    e = g.element_from_index(idx)
    o = elt_order(g, e)
    assert g.exponent % o == 0
    acc = g.zero
    for _ in range(o):
        acc = acc + e
    assert acc.index == 0


def test_parse_element_round_trip():
    g = make_group((2, 4))
    for i in range(g.order):
        e = g.element_from_index(i)
        assert parse_element(g, format_element(e)).index == i
    c6 = make_group((6,))
    assert parse_element(c6, "4").coords == (4,)
    with pytest.raises(ParseError):
        parse_element(c6, "(1,2)")


@pytest.mark.parametrize("factors", SMALL_FACTOR_LISTS)
def test_subgroup_generated_is_a_closure(factors):
    g = make_group(factors)
    for i in range(g.order):
        sub = subgroup_generated(g, [i])
        idxs = set(sub.indices())
        assert 0 in idxs
        # closed under addition and matches the cyclic order of the generator
        for a in idxs:
            for b in idxs:
                assert g.index_add(a, b) in idxs
        assert sub.order == elt_order(g, g.element_from_index(i))
        assert g.order % sub.order == 0


def test_subgroup_from_elements_rejects_non_subgroups():
    g = make_group((4,))
    with pytest.raises(NotASubgroup):
        subgroup_from_elements(g, [g.element_from_index(0), g.element_from_index(1)])


# lattice sizes pinned against hand counts of the classical small cases
@pytest.mark.parametrize(
    "text,count",
    [("c12", 6), ("c2xc2", 5), ("c2xc4", 8), ("c3xc3", 6), ("c2xc2xc2", 16), ("c7", 2)],
)
def test_all_subgroups_counts(text, count):
    g = parse_group(text)
    subs = all_subgroups(g)
    assert len(subs) == count
    masks = {s.mask for s in subs}
    assert len(masks) == count
    orders = [s.order for s in subs]
    assert orders == sorted(orders)


def test_subgroup_iso_types_in_klein_vs_cyclic():
    g = parse_group("c2xc4")
    subs = all_subgroups(g)
    types = sorted(s.iso_type for s in subs)
    assert types.count((2, 2)) == 1
    assert types.count((4,)) == 2
    assert types.count((2,)) == 3


@pytest.mark.parametrize("factors", SMALL_FACTOR_LISTS)
def test_quotient_order_and_homomorphism(factors):
    g = make_group(factors)
    for sub in all_subgroups(g):
        q, proj = quotient(g, sub)
        assert q.order * sub.order == g.order
        assert quotient_iso_type(g, sub) == q.invariant_factors or q.order == 1
        for a in range(g.order):
            for b in range(g.order):
                lhs = proj.table[g.index_add(a, b)]
                rhs = q.index_add(proj.table[a], proj.table[b])
                assert lhs == rhs
        # the kernel is exactly the subgroup
        kernel = {i for i in range(g.order) if proj.table[i] == 0}
        assert kernel == set(sub.indices())


def test_abelian_group_types_census():
    groups = abelian_group_types(36)
    # sum over 2 <= n <= 36 of prod(partition counts of the prime exponents of n)
    assert len(groups) == 61
    assert len({format_group(g) for g in groups}) == 61
    for g in groups:
        assert 2 <= g.order <= 36
        facs = g.invariant_factors
        assert all(facs[i + 1] % facs[i] == 0 for i in range(len(facs) - 1))


def test_translate_and_dilate_masks():
    g = make_group((6,))
    mask = 0b000111  # {0,1,2}
    shifted = g.translate_mask(mask, 2)
    assert sorted(i for i in range(6) if shifted >> i & 1) == [2, 3, 4]
    doubled = g.dilate_mask(mask, 2)
    assert sorted(i for i in range(6) if doubled >> i & 1) == [0, 2, 4]
    # dilation by a unit permutes the group
    u = g.dilate_mask(g.full_mask, 5)
    assert u == g.full_mask
