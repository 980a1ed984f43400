from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from codebreaker.cardinal import Fin, OMEGA, ZERO
from codebreaker.feedback import (
    GRAY, GREEN, YELLOW, MastermindFeedback, TricolorClosed, TricolorFinite,
    brute_force_rearrangement, mastermind_feedback, simplified_feedback,
    wordle_feedback,
)
from codebreaker.positions import PositionSet
from codebreaker.words import (
    ClosedFormWord, Constant, FiniteWord, LengthMismatch, Periodic, Shift,
    letters, truncation_bound,
)

AZ = letters("ABCDEFGHIJKLMNOPQRSTUVWXYZ")


def tiles_of(code: str, guess: str):
    fb = wordle_feedback(AZ.parse(code), AZ.parse(guess))
    glyph = {GRAY: "x", YELLOW: "y", GREEN: "g"}
    return "".join(glyph[int(t)] for t in fb.tiles)


# -- classic five-letter rows (duplicate-letter supply rule) ----------------

def test_wordle_rows_for_codeword_error():
    assert tiles_of("ERROR", "LOGIC") == "xyxxx"
    assert tiles_of("ERROR", "SMART") == "xxxyx"
    assert tiles_of("ERROR", "PROVE") == "xgyxy"
    assert tiles_of("ERROR", "ORDER") == "ygxyg"
    assert tiles_of("ERROR", "ERROR") == "ggggg"
    assert wordle_feedback(AZ.parse("ERROR"), AZ.parse("ERROR")).all_green


def test_wordle_duplicate_supply():
    # one A available to the right of the green match
    assert tiles_of("ABBB", "AAAA") == "gxxx"
    assert tiles_of("AABB", "ABAA") == "gyyx"
    assert tiles_of("ABAB", "AABB") == "gyyg"


def test_wordle_length_mismatch():
    with pytest.raises(LengthMismatch):
        wordle_feedback(AZ.parse("AB"), AZ.parse("ABC"))
    with pytest.raises(LengthMismatch):
        wordle_feedback(AZ.parse("AB"), ClosedFormWord(Constant(0)))


# -- four-peg mastermind rows ------------------------------------------------

def test_mastermind_four_peg_rows():
    # colors: 0 sky blue, 1 orange, 2 yellow, 3 orchid, 4 lime green, 5 red
    code = FiniteWord.from_symbols([0, 1, 2, 3])
    rows = [
        ([1, 1, 4, 4], (1, 0, 3)),
        ([0, 0, 5, 5], (1, 0, 3)),
        ([1, 3, 2, 5], (1, 2, 1)),
        ([1, 0, 3, 2], (0, 4, 0)),
        ([0, 1, 2, 3], (4, 0, 0)),
    ]
    for pegs, (k, r, e) in rows:
        fb = mastermind_feedback(code, FiniteWord.from_symbols(pegs))
        assert fb == MastermindFeedback(Fin(k), Fin(r), Fin(e))
    assert mastermind_feedback(code, code).is_win(Fin(4))


def test_simplified_feedback_counts_matches_only():
    code = FiniteWord.from_symbols([0, 1, 2, 3])
    fb = simplified_feedback(code, FiniteWord.from_symbols([1, 0, 3, 2]))
    assert (fb.correct, fb.incorrect) == (ZERO, Fin(4))
    assert simplified_feedback(code, code).is_win(Fin(4))


# -- brute-force oracle agreement on small boards ----------------------------

def test_exhaustive_agreement_with_rearrangement_search():
    for length in (1, 2, 3, 4):
        for code in itertools.product(range(3), repeat=length):
            cw = FiniteWord.from_symbols(code)
            for guess in itertools.product(range(3), repeat=length):
                gw = FiniteWord.from_symbols(guess)
                fb = mastermind_feedback(cw, gw)
                rho, eps, perm = brute_force_rearrangement(cw, gw)
                assert (fb.rho, fb.epsilon) == (rho, eps)
                # the same permutation attains the max correct and min wrong
                assert rho + eps == Fin(len(perm))


def test_brute_force_reports_witness_permutation():
    code = FiniteWord.from_symbols([0, 1, 2, 3])
    guess = FiniteWord.from_symbols([1, 0, 3, 2])
    rho, eps, perm = brute_force_rearrangement(code, guess)
    assert (rho, eps) == (Fin(4), ZERO)
    slots = [0, 1, 2, 3]
    pegs = [1, 0, 3, 2]
    assert all(pegs[i] == slots[perm[i]] for i in range(4))


def test_brute_force_cap():
    code = FiniteWord.from_symbols([0] * 10)
    guess = FiniteWord.from_symbols([1] * 10)
    with pytest.raises(ValueError):
        brute_force_rearrangement(code, guess)


# -- no-duplicate boards reduce to color-set bookkeeping ----------------------

@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.permutations(range(8)).map(lambda p: p[:n]),
                        st.permutations(range(8)).map(lambda p: p[:n]))))
def test_injective_pairs_follow_the_color_set_rule(pair):
    code, guess = pair
    cw, gw = FiniteWord.from_symbols(code), FiniteWord.from_symbols(guess)
    fb = mastermind_feedback(cw, gw)
    wrong = [i for i in range(len(code)) if code[i] != guess[i]]
    slots = {code[i] for i in wrong}
    pegs = {guess[i] for i in wrong}
    assert fb.rho == Fin(len(pegs & slots))
    assert fb.epsilon == Fin(len(pegs - slots))
    assert fb.epsilon == Fin(len(slots - pegs))


# -- closed-form pairs with finite disagreement -------------------------------

def test_single_exception_off_constant():
    code = ClosedFormWord(Constant(0), {3: 1})
    guess = ClosedFormWord(Constant(0))
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(OMEGA, ZERO, Fin(1))
    tiles = wordle_feedback(code, guess)
    assert tiles.green.missing_positions() == frozenset({3})
    assert tiles.yellow_positions == frozenset()


def test_transposed_exceptions_are_fully_rearrangeable():
    code = ClosedFormWord(Constant(0), {3: 1, 5: 2})
    guess = ClosedFormWord(Constant(0), {3: 2, 5: 1})
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(OMEGA, Fin(2), ZERO)
    tiles = wordle_feedback(code, guess)
    assert tiles.yellow_positions == frozenset({3, 5})
    assert tiles.yellow_counts == {1: Fin(1), 2: Fin(1)}


def test_swap_against_identity_ladder():
    code = ClosedFormWord(Shift(0), {0: 1, 1: 0})
    guess = ClosedFormWord(Shift(0))
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(OMEGA, Fin(2), ZERO)


# -- infinite disagreement ----------------------------------------------------

def test_constant_guess_reads_off_color_counts():
    code = ClosedFormWord(Periodic((0, 1)))
    guess = ClosedFormWord(Constant(0))
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(OMEGA, ZERO, OMEGA)


def test_phase_shifted_periods_swap_cleanly():
    code = ClosedFormWord(Periodic((0, 1)))
    guess = ClosedFormWord(Periodic((1, 0)))
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(ZERO, OMEGA, ZERO)


def test_interleaved_periods_rearrange_with_no_residue():
    code = ClosedFormWord(Periodic((0, 0, 1, 1)))
    guess = ClosedFormWord(Periodic((0, 1)))
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(OMEGA, OMEGA, ZERO)


def test_reservoir_absorbs_a_lone_bad_peg():
    code = ClosedFormWord(Periodic((0, 1)))
    guess = ClosedFormWord(Periodic((1, 0)), {0: 2})
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(ZERO, OMEGA, Fin(1))


def test_one_sided_ladder_offset_blocks_every_rearrangement():
    # guess colors 0,1,2,... once each; code colors 1,2,3,... once each.
    # A single surplus peg cascades: no bijection leaves only finitely
    # many pegs wrong, even though the surplus is just one color.
    code = ClosedFormWord(Shift(1))
    guess = ClosedFormWord(Shift(0))
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(ZERO, OMEGA, OMEGA)


def test_ladder_against_constant():
    code = ClosedFormWord(Shift(0))
    guess = ClosedFormWord(Constant(5))
    fb = mastermind_feedback(code, guess)
    assert fb == MastermindFeedback(Fin(1), ZERO, OMEGA)


def test_wordle_closed_counts_yellow_per_letter():
    code = ClosedFormWord(Periodic((0, 1)))
    guess = ClosedFormWord(Periodic((1, 0)))
    tiles = wordle_feedback(code, guess)
    assert tiles.green.cardinality() == ZERO
    assert tiles.yellow_positions is None
    assert tiles.yellow_counts == {0: OMEGA, 1: OMEGA}
    assert not tiles.all_green


def test_wordle_closed_ladder_tail_marker():
    tiles = wordle_feedback(ClosedFormWord(Shift(1)), ClosedFormWord(Shift(0)))
    assert tiles.yellow_tail_once
    assert all(n == Fin(1) for n in tiles.yellow_counts.values())


# -- structural invariants ----------------------------------------------------

bases = st.one_of(
    st.integers(0, 5).map(Constant),
    st.integers(0, 4).map(Shift),
    st.lists(st.integers(0, 5), min_size=1, max_size=4).map(lambda p: Periodic(tuple(p))),
)


@st.composite
def closed_words(draw):
    base = draw(bases)
    exc = {}
    for _ in range(draw(st.integers(0, 3))):
        p = draw(st.integers(0, 12))
        v = draw(st.integers(0, 8))
        if base.value_at(p) != v:
            exc[p] = v
    return ClosedFormWord(base, exc)


@given(closed_words(), closed_words())
@settings(max_examples=150, deadline=None)
def test_parts_always_sum_to_the_whole(code, guess):
    fb = mastermind_feedback(code, guess)
    assert fb.kappa + fb.rho + fb.epsilon == OMEGA
    assert fb.rho + fb.epsilon == simplified_feedback(code, guess).incorrect


def _prefix_feedback(code: ClosedFormWord, guess: ClosedFormWord, n: int):
    cw = FiniteWord.from_symbols([code.eval_at(i) for i in range(n)])
    gw = FiniteWord.from_symbols([guess.eval_at(i) for i in range(n)])
    return mastermind_feedback(cw, gw)


@given(closed_words(), closed_words())
@settings(max_examples=80, deadline=None)
def test_kappa_and_rho_agree_with_growing_prefixes(code, guess):
    # kappa and rho are monotone in the prefix length, so a finite value
    # must stabilize by the structural bound and an omega must keep growing.
    # epsilon is deliberately excluded: truncation can starve a reservoir.
    n = truncation_bound(code, guess)
    fb = mastermind_feedback(code, guess)
    small, big = _prefix_feedback(code, guess, n), _prefix_feedback(code, guess, 2 * n)
    for exact, lo, hi in ((fb.kappa, small.kappa, big.kappa),
                          (fb.rho, small.rho, big.rho)):
        if exact.is_finite:
            assert lo == exact and hi == exact
        else:
            assert lo < hi


@given(closed_words(), closed_words())
@settings(max_examples=60, deadline=None)
def test_small_disagreement_matches_brute_force(code, guess):
    from codebreaker.words import agreement_set
    disagree = agreement_set(code, guess).complement()
    if disagree.is_infinite:
        return
    spots = sorted(disagree.finite_positions())
    if len(spots) > 7:
        return
    fb = mastermind_feedback(code, guess)
    n = (max(spots) + 1) if spots else 1
    cw = FiniteWord.from_symbols([code.eval_at(i) for i in range(n)])
    gw = FiniteWord.from_symbols([guess.eval_at(i) for i in range(n)])
    rho, eps, _ = brute_force_rearrangement(cw, gw)
    assert (fb.rho, fb.epsilon) == (rho, eps)


@given(closed_words(), closed_words())
@settings(max_examples=80, deadline=None)
def test_wordle_yellow_counts_agree_with_prefix_scans(code, guess):
    n = truncation_bound(code, guess)
    tiles = wordle_feedback(code, guess)
    for letter, count in tiles.yellow_counts.items():
        small = _yellow_count(code, guess, n, letter)
        big = _yellow_count(code, guess, 2 * n, letter)
        if count.is_finite:
            assert small == count.finite() and big == count.finite()
        else:
            assert small < big


def _yellow_count(code, guess, n, letter):
    fb = _prefix_wordle(code, guess, n)
    return sum(1 for p in np.flatnonzero(fb.tiles == YELLOW)
               if guess.eval_at(int(p)) == letter)


def _prefix_wordle(code, guess, n):
    cw = FiniteWord.from_symbols([code.eval_at(i) for i in range(n)])
    gw = FiniteWord.from_symbols([guess.eval_at(i) for i in range(n)])
    return wordle_feedback(cw, gw)


# -- serialization ------------------------------------------------------------

def test_feedback_json_shapes():
    fb = mastermind_feedback(ClosedFormWord(Constant(0), {3: 1}),
                             ClosedFormWord(Constant(0)))
    assert fb.to_json() == {"kappa": "omega", "rho": 0, "epsilon": 1}
    tiles = wordle_feedback(AZ.parse("ERROR"), AZ.parse("ORDER"))
    js = tiles.to_json()
    assert js["kind"] == "finite" and js["grayImplied"]
    assert js["green"] == [1, 4] and js["yellow"] == [0, 3]
    closed = wordle_feedback(ClosedFormWord(Periodic((0, 1))),
                             ClosedFormWord(Periodic((1, 0))))
    cj = closed.to_json()
    assert cj["kind"] == "closed" and cj["yellowCounts"] == {"0": "omega", "1": "omega"}
