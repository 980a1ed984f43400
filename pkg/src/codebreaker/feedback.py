"""Feedback rules for the three game families.

Wordle answers with tricolor tiles (green = right color right place,
yellow = right color wrong place under the standard duplicate-letter
supply rule, gray implied).  Mastermind answers with a triple

    kappa   pegs already correct,
    rho     incorrect pegs that one permutation of the incorrect
            positions can simultaneously make correct,
    epsilon incorrect pegs that remain wrong under every such permutation,

all three as cardinals.  Rearrangement means a bijection of the incorrect
positions, not an arbitrary injection, which matters for infinite words:
excess guess colors can only be absorbed by a color class that is
infinite on both sides.  Writing g_c and w_c for the per-color counts of
the guess and the code over the disagreement set,

    rho = sum_c min(g_c, w_c)
    epsilon = a                if a == b
            = max(a, b)        if a != b and some g_c = w_c = omega
            = omega            otherwise

where a = sum_c (g_c monus w_c) and b = sum_c (w_c monus g_c).  On finite
words a == b always, so epsilon is the familiar leftover count.

Everything on closed-form pairs is computed exactly by case analysis on
the base shapes; nothing is sampled.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .cardinal import Cardinal, Fin, OMEGA, ZERO
from .positions import PositionSet
from .words import (
    ClosedFormWord, Constant, FiniteWord, LengthMismatch, Periodic, Shift, Word,
    agreement_set, count_color_on,
)


# ---------------------------------------------------------------------------
# feedback value types


GRAY, YELLOW, GREEN = 0, 1, 2


@dataclass(frozen=True, eq=False)
class TricolorFinite:
    """Tile row for a finite pair; tiles[i] in {GRAY, YELLOW, GREEN}."""

    tiles: np.ndarray

    def green_positions(self) -> FrozenSet[int]:
        return frozenset(int(p) for p in np.flatnonzero(self.tiles == GREEN))

    def yellow_positions(self) -> FrozenSet[int]:
        return frozenset(int(p) for p in np.flatnonzero(self.tiles == YELLOW))

    @property
    def all_green(self) -> bool:
        return bool(np.all(self.tiles == GREEN))

    def pattern_key(self) -> tuple:
        return tuple(int(t) for t in self.tiles)

    def green_count(self) -> Cardinal:
        return Fin(int(np.count_nonzero(self.tiles == GREEN)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TricolorFinite):
            return NotImplemented
        return bool(np.array_equal(self.tiles, other.tiles))

    def __hash__(self) -> int:
        return hash(self.tiles.tobytes())

    def __repr__(self) -> str:
        glyphs = {GRAY: "x", YELLOW: "y", GREEN: "g"}
        return "Tiles(" + "".join(glyphs[int(t)] for t in self.tiles) + ")"

    def to_json(self) -> dict:
        return {
            "kind": "finite",
            "length": int(self.tiles.size),
            "green": sorted(int(p) for p in np.flatnonzero(self.tiles == GREEN)),
            "yellow": sorted(int(p) for p in np.flatnonzero(self.tiles == YELLOW)),
            "grayImplied": True,
        }


@dataclass(frozen=True)
class TricolorClosed:
    """Tile information for a closed-form pair.

    ``green`` is an exact position-set descriptor.  Yellow positions are
    listed only when the disagreement set is finite; otherwise yellow is
    reported as per-letter cardinal counts, with ``yellow_tail_once``
    flagging the shift-versus-shift case where infinitely many further
    letters are each yellow exactly once.
    """

    green: PositionSet
    yellow_counts: Dict[int, Cardinal]
    yellow_positions: Optional[FrozenSet[int]] = None
    yellow_tail_once: bool = False

    @property
    def all_green(self) -> bool:
        return self.green.is_cofinite() and not self.green.missing_positions()

    def green_count(self) -> Cardinal:
        return self.green.cardinality()

    def pattern_key(self) -> tuple:
        return (
            tuple(sorted(self.green.to_json().items(), key=str)),
            tuple(sorted((c, n.to_json()) for c, n in self.yellow_counts.items() if n)),
            tuple(sorted(self.yellow_positions or ())),
            self.yellow_tail_once,
        )

    def to_json(self) -> dict:
        return {
            "kind": "closed",
            "green": self.green.to_json(),
            "yellowCounts": {str(c): n.to_json() for c, n in sorted(self.yellow_counts.items()) if n},
            "yellowPositions": sorted(self.yellow_positions) if self.yellow_positions is not None else None,
            "yellowTailOnce": self.yellow_tail_once,
            "grayImplied": True,
        }


@dataclass(frozen=True)
class MastermindFeedback:
    kappa: Cardinal
    rho: Cardinal
    epsilon: Cardinal

    def is_win(self, length: Cardinal) -> bool:
        return self.kappa == length and self.rho == ZERO and self.epsilon == ZERO

    def as_tuple(self) -> tuple:
        return (self.kappa, self.rho, self.epsilon)

    def to_json(self) -> dict:
        return {"kappa": self.kappa.to_json(), "rho": self.rho.to_json(),
                "epsilon": self.epsilon.to_json()}


@dataclass(frozen=True)
class SimplifiedFeedback:
    correct: Cardinal
    incorrect: Cardinal

    def is_win(self, length: Cardinal) -> bool:
        return self.correct == length and self.incorrect == ZERO

    def to_json(self) -> dict:
        return {"correct": self.correct.to_json(), "incorrect": self.incorrect.to_json()}


# ---------------------------------------------------------------------------
# wordle


def wordle_feedback(code: Word, guess: Word):
    """Tricolor tiles for ``guess`` against hidden ``code``."""
    if isinstance(code, FiniteWord) and isinstance(guess, FiniteWord):
        return _wordle_finite(code, guess)
    if isinstance(code, ClosedFormWord) and isinstance(guess, ClosedFormWord):
        return _wordle_closed(code, guess)
    raise LengthMismatch("wordle feedback needs two finite or two closed-form words")


def _wordle_finite(code: FiniteWord, guess: FiniteWord) -> TricolorFinite:
    if code.size() != guess.size():
        raise LengthMismatch(f"lengths {code.size()} and {guess.size()} differ")
    c, g = code.symbols, guess.symbols
    green = c == g
    tiles = np.where(green, GREEN, GRAY).astype(np.int8)
    misplaced = ~green
    if misplaced.any():
        supply_source = c[misplaced]
        top = int(max(supply_source.max(), g.max())) + 1
        supply = np.bincount(supply_source, minlength=top)
        # per letter, yellow the leftmost occurrences up to the unmatched supply
        for letter in np.unique(g[misplaced]):
            have = int(supply[letter])
            if not have:
                continue
            spots = np.flatnonzero(misplaced & (g == letter))[:have]
            tiles[spots] = YELLOW
    return TricolorFinite(tiles)


def _wordle_closed(code: ClosedFormWord, guess: ClosedFormWord) -> TricolorClosed:
    green = agreement_set(code, guess)
    disagree = green.complement()
    if not disagree.is_infinite:
        spots = sorted(disagree.finite_positions())
        counts: Dict[int, Cardinal] = {}
        avail: Dict[int, Cardinal] = {}
        yellows = set()
        for p in spots:
            letter = guess.eval_at(p)
            if letter not in avail:
                avail[letter] = count_color_on(code, letter, disagree)
            if avail[letter]:
                yellows.add(p)
                avail[letter] = avail[letter].monus(Fin(1))
                counts[letter] = counts.get(letter, ZERO) + Fin(1)
        return TricolorClosed(green, counts, frozenset(yellows))
    stats = _restricted_pair_stats(code, guess, disagree)
    return TricolorClosed(green, stats.per_color_min, None, stats.tail_min_once)


# ---------------------------------------------------------------------------
# mastermind


def mastermind_feedback(code: Word, guess: Word) -> MastermindFeedback:
    if isinstance(code, FiniteWord) and isinstance(guess, FiniteWord):
        if code.size() != guess.size():
            raise LengthMismatch(f"lengths {code.size()} and {guess.size()} differ")
        c, g = code.symbols, guess.symbols
        wrong = c != g
        kappa = int(c.size - np.count_nonzero(wrong))
        rho = _finite_rearrangeable(c[wrong], g[wrong])
        return MastermindFeedback(Fin(kappa), Fin(rho), Fin(int(np.count_nonzero(wrong)) - rho))
    if isinstance(code, ClosedFormWord) and isinstance(guess, ClosedFormWord):
        agree = agreement_set(code, guess)
        disagree = agree.complement()
        kappa = agree.cardinality()
        if not disagree.is_infinite:
            spots = sorted(disagree.finite_positions())
            cc = np.array([code.eval_at(p) for p in spots], dtype=np.int64)
            gg = np.array([guess.eval_at(p) for p in spots], dtype=np.int64)
            rho = _finite_rearrangeable(cc, gg)
            return MastermindFeedback(kappa, Fin(rho), Fin(len(spots) - rho))
        stats = _restricted_pair_stats(code, guess, disagree)
        return MastermindFeedback(kappa, stats.rho, stats.epsilon)
    raise LengthMismatch("mastermind feedback needs two finite or two closed-form words")


def _finite_rearrangeable(code_rest: np.ndarray, guess_rest: np.ndarray) -> int:
    if code_rest.size == 0:
        return 0
    top = int(max(code_rest.max(), guess_rest.max())) + 1
    return int(np.minimum(np.bincount(code_rest, minlength=top),
                          np.bincount(guess_rest, minlength=top)).sum())


def simplified_feedback(code: Word, guess: Word) -> SimplifiedFeedback:
    from .words import agreement_census
    cen = agreement_census(code, guess)
    return SimplifiedFeedback(cen.agree, cen.disagree)


# ---------------------------------------------------------------------------
# exact per-color analysis over an infinite disagreement set


@dataclass
class _PairStats:
    rho: Cardinal
    epsilon: Cardinal
    excess_guess: Cardinal      # a = sum_c (g_c monus w_c)
    excess_code: Cardinal       # b = sum_c (w_c monus g_c)
    reservoir: bool             # some color with g_c = w_c = omega
    per_color_min: Dict[int, Cardinal] = field(default_factory=dict)
    tail_min_once: bool = False


def _interesting_colors(word: ClosedFormWord, region: PositionSet) -> Tuple[set, Optional[int]]:
    """Colors needing explicit counts, and the tail offset if the base is
    a shift (whose color support over an infinite region is unbounded)."""
    base, exc = word.base, word.exceptions
    touched = set(exc.values())
    if isinstance(base, Constant):
        return touched | {base.color}, None
    if isinstance(base, Periodic):
        return touched | set(base.pattern), None
    touched |= {p + base.offset for p in exc}
    return touched, base.offset


def _restricted_pair_stats(code: ClosedFormWord, guess: ClosedFormWord,
                           region: PositionSet) -> _PairStats:
    """Exact rho/epsilon data for an infinite disagreement region."""
    assert region.is_infinite
    code_colors, code_shift = _interesting_colors(code, region)
    guess_colors, guess_shift = _interesting_colors(guess, region)

    explicit = set(code_colors) | set(guess_colors)
    if code_shift is not None or guess_shift is not None:
        # below color_bound exceptions and finite region edits can interfere;
        # at or above it (and off the named colors) shift-tail counts are
        # residue-determined and the other base contributes nothing
        pos_bound = 1 + max(
            [*region.added, *region.removed,
             *code.exceptions, *guess.exceptions, -1])
        color_bound = max(k + pos_bound
                          for k in (code_shift, guess_shift) if k is not None)
        explicit |= set(range(color_bound))

    rho_fin = 0
    rho_inf = False
    a_fin = 0
    a_inf = False
    b_fin = 0
    b_inf = False
    reservoir = False
    per_color_min: Dict[int, Cardinal] = {}

    for c in explicit:
        wc = count_color_on(code, c, region)
        gc = count_color_on(guess, c, region)
        if wc.is_omega and gc.is_omega:
            reservoir = True
            rho_inf = True
            per_color_min[c] = OMEGA
            continue
        m = wc.min(gc)
        if m:
            per_color_min[c] = m
            rho_fin += m.finite()
        if gc.is_omega:
            a_inf = True
        elif wc.is_finite:
            a_fin += max(gc.finite() - wc.finite(), 0)
        if wc.is_omega:
            b_inf = True
        elif gc.is_finite:
            b_fin += max(wc.finite() - gc.finite(), 0)

    tail_min_once = False
    if guess_shift is not None and code_shift is None:
        a_inf = True  # infinitely many tail colors appear once in the guess only
    if code_shift is not None and guess_shift is None:
        b_inf = True
    if code_shift is not None and guess_shift is not None:
        m, res = region.modulus, region.residues
        both = one_code = one_guess = False
        for r in range(m):
            in_code = (r - code_shift) % m in res
            in_guess = (r - guess_shift) % m in res
            both |= in_code and in_guess
            one_code |= in_code and not in_guess
            one_guess |= in_guess and not in_code
        rho_inf |= both
        tail_min_once = both
        a_inf |= one_guess
        b_inf |= one_code

    rho = OMEGA if rho_inf else Fin(rho_fin)
    a = OMEGA if a_inf else Fin(a_fin)
    b = OMEGA if b_inf else Fin(b_fin)
    if a == b:
        epsilon = a
    elif reservoir:
        epsilon = max(a, b)
    else:
        epsilon = OMEGA
    return _PairStats(rho, epsilon, a, b, reservoir, per_color_min, tail_min_once)


# ---------------------------------------------------------------------------
# brute-force oracle


def brute_force_rearrangement(code: FiniteWord, guess: FiniteWord
                              ) -> Tuple[Cardinal, Cardinal, Tuple[int, ...]]:
    """Exhaustively search permutations of the incorrect positions.

    Returns (rho, epsilon, permutation) where the permutation is given as
    a tuple pi with the peg from incorrect slot i moving to incorrect
    slot pi[i] (indices into the sorted incorrect-position list), chosen
    to simultaneously maximize corrected pegs and minimize the remainder.
    """
    if code.size() != guess.size():
        raise LengthMismatch("length mismatch")
    c, g = code.symbols, guess.symbols
    wrong = [int(p) for p in np.flatnonzero(c != g)]
    if len(wrong) > 9:
        raise ValueError("brute force capped at 9 incorrect positions")
    slots = [int(c[p]) for p in wrong]
    pegs = [int(g[p]) for p in wrong]
    best, best_perm = -1, tuple(range(len(wrong)))
    for perm in permutations(range(len(wrong))):
        score = sum(1 for i, j in enumerate(perm) if pegs[i] == slots[j])
        if score > best:
            best, best_perm = score, perm
    if best < 0:
        best = 0
    return Fin(best), Fin(len(wrong) - best), best_perm
