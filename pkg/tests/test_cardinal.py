from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from codebreaker.cardinal import (
    Cardinal, Fin, OMEGA, ZERO, OrdinalStage, STAGE_OMEGA, as_cardinal, cardinal_sum,
)

cardinals = st.one_of(st.integers(0, 50).map(Fin), st.just(OMEGA))


def test_add_absorbs():
    assert Fin(2) + Fin(3) == Fin(5)
    assert OMEGA + Fin(3) == OMEGA
    assert Fin(3) + OMEGA == OMEGA
    assert OMEGA + OMEGA == OMEGA


def test_monus_table():
    assert Fin(5).monus(Fin(2)) == Fin(3)
    assert Fin(2).monus(Fin(5)) == ZERO
    assert OMEGA.monus(Fin(10 ** 9)) == OMEGA
    assert Fin(7).monus(OMEGA) == ZERO
    assert OMEGA.monus(OMEGA) == ZERO


def test_order_and_min():
    assert Fin(3) < OMEGA
    assert not OMEGA < OMEGA
    assert Fin(2).min(OMEGA) == Fin(2)
    assert OMEGA.min(OMEGA) == OMEGA
    assert sorted([OMEGA, Fin(4), Fin(0)]) == [Fin(0), Fin(4), OMEGA]


def test_rejects_negative():
    with pytest.raises(ValueError):
        Fin(-1)


@given(cardinals, cardinals)
def test_monus_inverts_add_on_finite(a, b):
    if a.is_finite and b.is_finite:
        assert (a + b).monus(b) == a
    # anything minus omega vanishes
    assert a.monus(OMEGA) == ZERO


@given(cardinals, cardinals, cardinals)
def test_add_monotone(a, b, c):
    if a <= b:
        assert a + c <= b + c


def test_sum_helper():
    assert cardinal_sum([Fin(1), Fin(2), Fin(3)]) == Fin(6)
    assert cardinal_sum([Fin(1), OMEGA]) == OMEGA
    assert cardinal_sum([]) == ZERO


def test_as_cardinal_coercion():
    assert as_cardinal(4) == Fin(4)
    with pytest.raises(TypeError):
        as_cardinal("x")


def test_stage_order():
    finite = [OrdinalStage(0, r) for r in range(5)]
    assert all(a < b for a, b in zip(finite, finite[1:]))
    assert all(s < STAGE_OMEGA for s in finite)
    assert STAGE_OMEGA < OrdinalStage(1, 1) < OrdinalStage(2, 0)


def test_stage_json_roundtrip():
    for s in [OrdinalStage(0, 7), STAGE_OMEGA, OrdinalStage(2, 3)]:
        assert OrdinalStage.from_json(s.to_json()) == s


def test_cardinal_json_roundtrip():
    for c in [ZERO, Fin(12), OMEGA]:
        assert Cardinal.from_json(c.to_json()) == c
