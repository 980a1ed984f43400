from __future__ import annotations

from hypothesis import given, strategies as st

from codebreaker.cardinal import Fin, OMEGA
from codebreaker.positions import PositionSet


position_sets = st.builds(
    PositionSet,
    st.integers(1, 6),
    st.just(frozenset()),
).flatmap(
    lambda ps: st.builds(
        PositionSet,
        st.just(ps.modulus),
        st.frozensets(st.integers(0, ps.modulus - 1), max_size=ps.modulus),
        st.frozensets(st.integers(0, 40), max_size=4),
        st.frozensets(st.integers(0, 40), max_size=4),
    )
)


def members(ps: PositionSet, bound: int) -> set:
    return {p for p in range(bound) if p in ps}


def test_finite_and_cofinite():
    fin = PositionSet.finite([2, 5])
    assert members(fin, 10) == {2, 5}
    assert fin.cardinality() == Fin(2)
    cof = PositionSet.cofinite([0, 3])
    assert members(cof, 6) == {1, 2, 4, 5}
    assert cof.cardinality() == OMEGA
    assert cof.missing_positions() == frozenset({0, 3})


def test_periodic_membership():
    evens = PositionSet.periodic(2, [0])
    assert members(evens, 8) == {0, 2, 4, 6}
    assert evens.cardinality() == OMEGA


@given(position_sets)
def test_complement_involution(ps):
    comp = ps.complement()
    assert members(comp, 90) == set(range(90)) - members(ps, 90)
    back = comp.complement()
    assert members(back, 90) == members(ps, 90)


@given(position_sets, position_sets)
def test_intersect_agrees_pointwise(a, b):
    got = a.intersect(b)
    assert members(got, 120) == members(a, 120) & members(b, 120)


@given(position_sets, st.integers(0, 7))
def test_shift_membership(ps, k):
    shifted = ps.shift_membership(k)
    expected = {p + k for p in members(ps, 100)}
    assert members(shifted, 100) == {p for p in expected if p < 100}


def test_with_edits_overrides():
    evens = PositionSet.periodic(2, [0])
    edited = evens.with_edits(force_in=[1, 3], force_out=[0, 2])
    assert members(edited, 8) == {1, 3, 4, 6}
    # editing a finite set's members works too
    fin = PositionSet.finite([1, 2]).with_edits([5], [2])
    assert members(fin, 10) == {1, 5}
    assert fin.cardinality() == Fin(2)


def test_least_member():
    assert PositionSet.periodic(3, [2]).least_member() == 2
    assert PositionSet.finite([7, 4]).least_member() == 4
    assert PositionSet.empty().least_member() is None
    assert PositionSet.periodic(3, [1]).with_edits([0], [1]).least_member() == 0


def test_cardinality_ignores_finite_edits():
    ps = PositionSet.periodic(2, [0]).with_edits([], [0, 2, 4])
    assert ps.cardinality() == OMEGA
    assert not PositionSet.finite(range(10)).is_infinite
