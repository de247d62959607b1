"""Subset-sum multisets, Minkowski sums, shift detection, equidistribution."""

import pytest
from hypothesis import given, settings, strategies as st

from fsrecon import (
    GroupMismatch,
    IntFunction,
    NotDivisible,
    SizeCapExceeded,
    SupportNotUnits,
    check_equidistributed,
    find_shifts,
    fs_multiset,
    make_group,
    minkowski_sum,
    multiset_sum,
    shift,
)
from oracles import fs_by_enumeration, multiset_of, shifts_by_exhaustion

Z5 = make_group([5])
Z7 = make_group([7])
Z3xZ = make_group([3], 1)


def fs_entries(fs):
    return {g.coords: v for g, v in fs.items()}


def test_fs_of_empty_multiset_is_delta_zero():
    fs = fs_multiset(IntFunction.zero(Z7))
    assert fs_entries(fs) == {(0,): 1}
    assert fs.total == 1


def test_fs_of_geometric_triple_mod_seven():
    # frozen from the enumeration oracle: 8 subset sums, 0 hit twice
    a = multiset_of(Z7, 1, 2, 4)
    fs = fs_multiset(a)
    assert fs_entries(fs) == {(0,): 2, (1,): 1, (2,): 1, (3,): 1, (4,): 1, (5,): 1, (6,): 1}
    assert fs == fs_by_enumeration(a)


def test_fs_of_pair_mod_five_misses_one_residue():
    fs = fs_multiset(multiset_of(Z5, 1, 2))
    assert fs_entries(fs) == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}
    assert fs.value(Z5.element([4])) == 0


def test_fs_size_cap():
    a = IntFunction(Z5, [(Z5.element([1]), 70)])
    with pytest.raises(SizeCapExceeded):
        fs_multiset(a)
    fs = fs_multiset(a, size_cap=70)
    assert fs.total == 2**70


small_group = st.sampled_from([make_group([3]), Z5, Z7, make_group([9]), Z3xZ])


@st.composite
def group_and_multiset(draw, max_size=6):
    group = draw(small_group)
    size = draw(st.integers(0, max_size))
    coords = st.tuples(*[st.integers(0, 8)] * group.torsion_rank, *[st.integers(-2, 2)] * group.free_rank)
    elements = draw(st.lists(coords, min_size=size, max_size=size))
    return group, IntFunction(group, [(group.element(c), 1) for c in elements])


@given(group_and_multiset())
def test_fs_total_is_power_of_two(gm):
    group, a = gm
    assert fs_multiset(a).total == 2 ** a.total()


@given(group_and_multiset())
@settings(max_examples=40)
def test_fs_matches_enumeration_oracle(gm):
    _, a = gm
    assert fs_multiset(a) == fs_by_enumeration(a)


def test_minkowski_identity_element():
    s = fs_multiset(multiset_of(Z5, 1, 2))
    delta0 = fs_multiset(IntFunction.zero(Z5))
    assert minkowski_sum(s, delta0) == s


def test_minkowski_is_fs_of_union():
    s = fs_multiset(multiset_of(Z5, 1))
    t = fs_multiset(multiset_of(Z5, 2))
    assert minkowski_sum(s, t) == fs_multiset(multiset_of(Z5, 1, 2))


def test_minkowski_expands_products():
    from fsrecon import FSMultiset

    s = FSMultiset(Z5, {Z5.element([0]): 1, Z5.element([1]): 1})
    t = FSMultiset(Z5, {Z5.element([0]): 1, Z5.element([2]): 1})
    assert fs_entries(minkowski_sum(s, t)) == {(0,): 1, (1,): 1, (2,): 1, (3,): 1}


@given(group_and_multiset(max_size=4), st.data())
@settings(max_examples=40)
def test_fs_of_disjoint_union_is_minkowski(gm, data):
    group, a = gm
    coords = st.tuples(*[st.integers(0, 8)] * group.torsion_rank, *[st.integers(-2, 2)] * group.free_rank)
    other = data.draw(st.lists(coords, min_size=0, max_size=4))
    b = IntFunction(group, [(group.element(c), 1) for c in other])
    assert fs_multiset(a + b) == minkowski_sum(fs_multiset(a), fs_multiset(b))


def test_shift_by_zero_and_inverse():
    s = fs_multiset(multiset_of(Z5, 1, 2))
    assert shift(s, Z5.zero()) == s
    by = Z5.element([3])
    assert shift(shift(s, by), -by) == s


def test_shift_translates_entries():
    from fsrecon import FSMultiset

    s = FSMultiset(Z5, {Z5.element([0]): 1, Z5.element([1]): 1})
    assert fs_entries(shift(s, Z5.element([3]))) == {(3,): 1, (4,): 1}


def test_find_shifts_identity():
    s = fs_multiset(multiset_of(Z5, 1, 2))
    assert [x.coords for x in find_shifts(s, s)] == [(0,)]


def test_find_shifts_on_known_pair():
    s = fs_multiset(multiset_of(Z5, 1, 2))
    t = fs_multiset(multiset_of(Z5, 3, 4))
    assert [x.coords for x in find_shifts(s, t)] == [(3,)]


def test_find_shifts_total_mismatch():
    s = fs_multiset(multiset_of(Z5, 1))
    t = fs_multiset(multiset_of(Z5, 1, 1))
    assert find_shifts(s, t) == []


def test_find_shifts_with_nontrivial_stabilizer():
    # hand-built uniform multiset: every translation fixes it
    from fsrecon import FSMultiset

    uniform = FSMultiset(make_group([3]), {make_group([3]).element([j]): 2 for j in range(3)})
    assert len(find_shifts(uniform, uniform)) == 3


def test_find_shifts_group_mismatch():
    with pytest.raises(GroupMismatch):
        find_shifts(fs_multiset(multiset_of(Z5, 1)), fs_multiset(multiset_of(Z7, 1)))


@given(group_and_multiset(max_size=4), st.data())
@settings(max_examples=40)
def test_find_shifts_matches_exhaustive_search(gm, data):
    group, a = gm
    coords = st.tuples(*[st.integers(0, 8)] * group.torsion_rank, *[st.integers(-2, 2)] * group.free_rank)
    other = data.draw(st.lists(coords, min_size=0, max_size=4))
    b = IntFunction(group, [(group.element(c), 1) for c in other])
    s, t = fs_multiset(a), fs_multiset(b)
    got = find_shifts(s, t)
    assert got == shifts_by_exhaustion(s, t)
    # negation symmetry
    assert sorted((-x).coords for x in got) == sorted(x.coords for x in find_shifts(t, s))


def test_multiset_sum_examples():
    assert multiset_sum(IntFunction.zero(Z7)).is_zero
    assert multiset_sum(multiset_of(Z7, 1, 2, 4)).is_zero
    assert multiset_sum(multiset_of(Z5, 1, 2)).coords == (3,)


@given(group_and_multiset())
def test_sum_rule_for_nonempty_multisets(gm):
    group, a = gm
    q = a.total()
    if q == 0:
        return
    assert fs_multiset(a).weighted_sum() == multiset_sum(a).scale(2 ** (q - 1))


def test_equidistributed_geometric_orbit():
    report = check_equidistributed(multiset_of(Z7, 1, 2, 4))
    assert report.uniform
    assert report.base_multiset == multiset_of(Z7, 1, 2, 4)
    assert report.membership.member


def test_equidistributed_scaled_orbit():
    report = check_equidistributed(multiset_of(Z7, 3, 5, 6))
    assert report.uniform
    assert report.membership.member
    # baseline is the multiplicative orbit of 2
    assert {g.coords[0] for g, _ in report.base_multiset.items()} == {1, 2, 4}


def test_equidistributed_rejects_repeated_unit():
    report = check_equidistributed(IntFunction(Z7, [(Z7.element([1]), 3)]))
    assert not report.uniform
    g, got, expected = report.witness
    assert got != expected


def test_equidistributed_guards():
    with pytest.raises(SupportNotUnits):
        check_equidistributed(multiset_of(Z7, 0))
    with pytest.raises(NotDivisible):
        check_equidistributed(multiset_of(Z7, 1))
    with pytest.raises(ValueError):
        check_equidistributed(multiset_of(Z3xZ, (1, 0)))


def test_equidistributed_empty_multiset():
    assert check_equidistributed(IntFunction.zero(Z7)).uniform
