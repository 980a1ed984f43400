"""Codebreaker strategies behind one stepping interface.

A strategy is a stateful stepper: ``begin(dictionary, mode)`` fixes the
game, then ``next_move(history)`` maps the transcript so far to either a
``Guess`` at some stage, a one-shot ``Claim``, or ``EXHAUSTED``.  All the
strategies here recompute their decision from the history argument alone,
so replaying a transcript through a fresh instance reproduces it exactly.

The module provides:

  * consistent-guess play driven by a ``DeductionState`` of greens and
    per-cell excluded symbols, which wins within alphabet-size guesses;
  * plain enumeration of a countable dictionary;
  * two schedulers that merge finitely many strategies, one interleaving
    them on disjoint stage sets and one running them back to back;
  * probe families that determine the codeword from green tiles (Wordle)
    or from constant and nearly-constant count answers (Mastermind),
    claiming at stage omega;
  * two decoders that reconstruct a hidden word from a correct-position
    count oracle, one by single-cell variation and one by transpositions
    that keep every query injective.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cardinal import Cardinal, STAGE_OMEGA, ZERO, OrdinalStage, as_cardinal
from .dictionaries import CellConstraint, CompleteDictionary, Dictionary
from .feedback import (
    GREEN, MastermindFeedback, SimplifiedFeedback, TricolorClosed, TricolorFinite,
)
from .words import (
    ClosedFormWord, Constant, FiniteWord, Word, check_injective,
)


class StrategyError(Exception):
    """A strategy cannot continue (bad mode, board shape, or transcript)."""


class OracleInconsistency(StrategyError):
    """Count answers that no codeword could have produced."""


class WindowTruncation(StrategyError):
    """The probe window is too small to pin down the codeword."""


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class Guess:
    stage: OrdinalStage
    word: Word


@dataclass(frozen=True)
class Claim:
    stage: OrdinalStage
    word: Word


class _Exhausted:
    def __repr__(self) -> str:
        return "EXHAUSTED"


EXHAUSTED = _Exhausted()

Move = Union[Guess, Claim, _Exhausted]

# One answered guess: (stage it was played at, the guess, the feedback).
HistoryEntry = Tuple[OrdinalStage, Word, object]


def _finite_stage(history: Sequence[HistoryEntry]) -> OrdinalStage:
    """Next consecutive finite stage after the given transcript."""
    if not history:
        return OrdinalStage(0, 1)
    last = history[-1][0]
    if not last.is_finite:
        raise StrategyError("no finite stage follows an omega-stage move")
    return last.successor()


class Strategy:
    """Base stepper.  Subclasses override ``begin`` and ``next_move``."""

    name = "strategy"

    def begin(self, dictionary: Dictionary, mode: str) -> None:
        self.dictionary = dictionary
        self.mode = mode

    def next_move(self, history: Sequence[HistoryEntry]) -> Move:
        raise NotImplementedError


# ---------------------------------------------------------------------------
# deduction from tile feedback


class DeductionState:
    """Per-cell knowledge accumulated from tricolor feedback.

    ``greens[p]`` is the pinned symbol at p, or -1.  ``seen[p, s]`` marks
    symbols excluded at p: every non-green cell of a guess excludes the
    guessed symbol there.  Once a cell has excluded all but one symbol,
    its menu is forced.  ``counts`` and ``facts`` hold count knowledge
    used by the probe deductions: color -> cardinal count, and
    (position, color) -> definitely-there / definitely-not.
    """

    def __init__(self, length: Optional[int] = None,
                 alphabet_size: Optional[int] = None):
        self.length = length
        self.alphabet_size = alphabet_size
        self.counts: Dict[int, Cardinal] = {}
        self.facts: Dict[Tuple[int, int], bool] = {}
        if length is not None and alphabet_size is not None:
            if length * alphabet_size > 200_000_000:
                raise StrategyError("deduction grid too large")
            self.greens = np.full(length, -1, dtype=np.int64)
            self.seen = np.zeros((length, alphabet_size), dtype=bool)
        else:
            self.greens = None
            self.seen = None

    def observe_tiles(self, guess: FiniteWord, tiles: TricolorFinite) -> None:
        if self.greens is None:
            raise StrategyError("tile deduction needs a finite board")
        g = guess.symbols
        green = tiles.tiles == GREEN
        self.greens[green] = g[green]
        rest = np.flatnonzero(~green)
        self.seen[rest, g[rest]] = True

    def open_cells(self) -> np.ndarray:
        return self.greens < 0

    def menu_sizes(self) -> np.ndarray:
        """Remaining symbol choices per cell (1 where green-pinned)."""
        sizes = self.alphabet_size - self.seen.sum(axis=1)
        sizes[~self.open_cells()] = 1
        return sizes

    def constraint(self) -> CellConstraint:
        required = {int(p): int(self.greens[p])
                    for p in np.flatnonzero(self.greens >= 0)}
        forbidden = {}
        for p in np.flatnonzero(self.open_cells() & self.seen.any(axis=1)):
            forbidden[int(p)] = {int(s) for s in np.flatnonzero(self.seen[p])}
        return CellConstraint(required=required, forbidden=forbidden)


def fresh_symbol_next(state: DeductionState, d: Dictionary) -> Optional[Word]:
    """A dictionary word consistent with all greens and exclusions.

    Consistency alone forces a never-excluded symbol into every open
    cell, so each guess shrinks every open menu by one and the board is
    forced after alphabet-size - 1 rounds.  Returns None only when no
    dictionary word fits, which means the transcript was corrupted.
    """
    if isinstance(d, CompleteDictionary) and d.length is not None:
        # direct construction: pinned greens, least unexcluded symbol elsewhere
        dead = state.seen.all(axis=1) & state.open_cells()
        if dead.any():
            return None
        least = np.argmax(~state.seen, axis=1)
        syms = np.where(state.open_cells(), least, state.greens)
        return FiniteWord.from_symbols(syms)
    return d.find_consistent(state.constraint())


class FreshSymbolStrategy(Strategy):
    """Consistent play: wins within alphabet-size guesses on any board."""

    name = "fresh"

    def begin(self, dictionary: Dictionary, mode: str) -> None:
        if mode != "wordle":
            raise StrategyError("fresh-symbol play reads tricolor feedback only")
        if dictionary.length is None:
            raise StrategyError("fresh-symbol play needs a finite board")
        super().begin(dictionary, mode)
        self._seen_count = 0
        self._cached: Optional[DeductionState] = None
        self._last_entry: Optional[HistoryEntry] = None

    def _state(self, history: Sequence[HistoryEntry]) -> DeductionState:
        # incremental: observe only the entries appended since the last call;
        # any other history (shorter, or swapped entries) rebuilds from scratch
        extends = (self._cached is not None
                   and self._seen_count <= len(history)
                   and (self._seen_count == 0
                        or history[self._seen_count - 1] is self._last_entry))
        if not extends:
            d = self.dictionary
            self._cached = DeductionState(d.length, d.alphabet.size)
            self._seen_count = 0
        for _, word, feedback in history[self._seen_count:]:
            self._cached.observe_tiles(word, feedback)
        self._seen_count = len(history)
        self._last_entry = history[-1] if history else None
        return self._cached

    def next_move(self, history: Sequence[HistoryEntry]) -> Move:
        word = fresh_symbol_next(self._state(history), self.dictionary)
        if word is None:
            raise StrategyError("history is inconsistent with the dictionary")
        return Guess(_finite_stage(history), word)


# ---------------------------------------------------------------------------
# enumeration


def enumeration_next(d: Dictionary, i: int) -> Union[Word, _Exhausted]:
    """The i-th dictionary word, or EXHAUSTED past the end of a finite d."""
    if d.size is not None and i >= d.size:
        return EXHAUSTED
    return d.word_at(i)


class EnumerationStrategy(Strategy):
    """Guess the dictionary in its canonical order; certain by exhaustion."""

    name = "enum"

    def next_move(self, history: Sequence[HistoryEntry]) -> Move:
        word = enumeration_next(self.dictionary, len(history))
        if word is EXHAUSTED:
            return EXHAUSTED
        return Guess(_finite_stage(history), word)


# ---------------------------------------------------------------------------
# combining strategies


def interleave_stage(n: int, k: int) -> int:
    """Finite stage carrying part n's k-th guess; injective in (n, k)."""
    return (1 << n) * (2 * k + 1)


def interleave_part(stage: int) -> Tuple[int, int]:
    """Inverse of interleave_stage, by odd-part factorization."""
    if stage < 1:
        raise ValueError("stages are positive")
    n = (stage & -stage).bit_length() - 1
    return n, ((stage >> n) - 1) // 2


PartSpec = Union[Strategy, Tuple[Strategy, Dictionary]]


def combine_strategies(mode: str, parts: Sequence[PartSpec]) -> "CombinedStrategy":
    """Merge finitely many strategies into one.

    ``interleaved`` plays part n's k-th guess at stage 2^n * (2k + 1), so
    the parts own pairwise disjoint stage sets and each sees only its own
    sub-history.  ``sequential`` runs the parts back to back at
    consecutive stages, advancing when a part exhausts.  Each part is a
    Strategy or a (Strategy, sub-dictionary) pair; a bare part plays on
    the combined dictionary.
    """
    if mode not in ("interleaved", "sequential"):
        raise ValueError(f"unknown combination mode: {mode}")
    if not parts:
        raise ValueError("need at least one part")
    normalized = []
    for part in parts:
        if isinstance(part, Strategy):
            normalized.append((part, None))
        else:
            strategy, sub = part
            normalized.append((strategy, sub))
    return CombinedStrategy(mode, normalized)


class CombinedStrategy(Strategy):
    name = "combined"

    def __init__(self, mode: str, parts: List[Tuple[Strategy, Optional[Dictionary]]]):
        self.combine_mode = mode
        self.parts = parts

    def begin(self, dictionary: Dictionary, mode: str) -> None:
        super().begin(dictionary, mode)
        for strategy, sub in self.parts:
            strategy.begin(sub if sub is not None else dictionary, mode)

    def next_move(self, history: Sequence[HistoryEntry]) -> Move:
        if self.combine_mode == "interleaved":
            return self._next_interleaved(history)
        return self._next_sequential(history)

    # -- interleaved -------------------------------------------------

    def _next_interleaved(self, history: Sequence[HistoryEntry]) -> Move:
        # regroup the transcript into per-part sub-histories, relabelled
        # with the consecutive local stages each part emitted them at
        locals_: List[List[HistoryEntry]] = [[] for _ in self.parts]
        last = 0
        for stage, word, feedback in history:
            n, _ = interleave_part(stage.r)
            sub = locals_[n]
            sub.append((OrdinalStage(0, len(sub) + 1), word, feedback))
            last = stage.r
        moves: List[Move] = [strategy.next_move(locals_[i])
                             for i, (strategy, _) in enumerate(self.parts)]
        if all(m is EXHAUSTED for m in moves):
            return EXHAUSTED
        t = last + 1
        while True:
            n, _ = interleave_part(t)
            if n < len(self.parts) and moves[n] is not EXHAUSTED:
                # a part's Claim is played as an ordinary finite-stage guess
                return Guess(OrdinalStage(0, t), moves[n].word)
            t += 1

    # -- sequential --------------------------------------------------

    def _next_sequential(self, history: Sequence[HistoryEntry]) -> Move:
        # replay the transcript through the parts in order; the first
        # move that runs past the transcript is the move to play now
        idx = 0
        for strategy, _ in self.parts:
            local: List[HistoryEntry] = []
            while True:
                move = strategy.next_move(local)
                if move is EXHAUSTED:
                    break
                if idx < len(history):
                    _, word, feedback = history[idx]
                    local.append((OrdinalStage(0, len(local) + 1), word, feedback))
                    idx += 1
                else:
                    return Guess(_finite_stage(history), move.word)
                if isinstance(move, Claim):
                    break  # a claim is the part's final word
        return EXHAUSTED


# ---------------------------------------------------------------------------
# green-probe play (tricolor games, claim at stage omega)


def _green_letter_witness(d: Dictionary, pos: int, letter: int) -> Optional[Word]:
    return d.find_consistent(CellConstraint(required={pos: letter}))


def green_probe_set(d: Dictionary, window: int) -> List[Word]:
    """One witness word per realizable (position, letter) pair.

    Playing every witness and reading only the green tiles reveals the
    codeword on all probed positions: the codeword's own letter at p is
    realizable, its witness gets a green at p, and no other letter can.
    Positions range over the window (clipped to the board length).
    Raises WindowTruncation when some position realizes more letters
    than the alphabet can enumerate, which no finite alphabet does.
    """
    limit = window if d.length is None else min(window, d.length)
    probes: List[Word] = []
    for pos in range(limit):
        for letter in range(d.alphabet.size):
            witness = _green_letter_witness(d, pos, letter)
            if witness is not None and witness not in probes:
                probes.append(witness)
    return probes


class GreenProbeStrategy(Strategy):
    """Play the green-probe set, then claim the only fitting word at omega."""

    name = "probe"

    def __init__(self, window: int):
        if window < 1:
            raise ValueError("window must be positive")
        self.window = window

    def begin(self, dictionary: Dictionary, mode: str) -> None:
        if mode != "wordle":
            raise StrategyError("green probes read tricolor feedback only")
        if dictionary.size is None:
            raise WindowTruncation(
                "an infinite dictionary is never pinned by finitely many probes")
        super().begin(dictionary, mode)
        self.probes = green_probe_set(dictionary, self.window)

    def _greens(self, history: Sequence[HistoryEntry]) -> Dict[int, int]:
        greens: Dict[int, int] = {}
        for _, word, feedback in history:
            if isinstance(feedback, TricolorFinite):
                spots = feedback.green_positions()
            elif isinstance(feedback, TricolorClosed):
                spots = feedback.green.iter_members(self.window)
            else:
                raise StrategyError("green probes read tricolor feedback only")
            for p in spots:
                greens[p] = word.eval_at(p)
        return greens

    def next_move(self, history: Sequence[HistoryEntry]) -> Move:
        i = len(history)
        if i < len(self.probes):
            return Guess(OrdinalStage(0, i + 1), self.probes[i])
        greens = self._greens(history)
        fits = [w for w in self.dictionary
                if all(w.eval_at(p) == letter for p, letter in greens.items())]
        if not fits:
            raise StrategyError("no dictionary word matches the greens")
        if len(fits) > 1:
            raise WindowTruncation(
                f"{len(fits)} dictionary words match all greens in window "
                f"{self.window}; enlarge the window")
        return Claim(STAGE_OMEGA, fits[0])


# ---------------------------------------------------------------------------
# count-probe play (Mastermind, claim at stage omega)


def _probe_word(base_color: int, off: Optional[Tuple[int, int]],
                length: Optional[int]) -> Word:
    """Constant word of base_color, or one off-color cell when given."""
    if length is None:
        word = ClosedFormWord(Constant(base_color))
        return word.with_exception(*off) if off else word
    symbols = np.full(length, base_color, dtype=np.int64)
    if off:
        symbols[off[0]] = off[1]
    return FiniteWord.from_symbols(symbols)


def mastermind_probe_family(window: int, colors: Sequence[int],
                            length: Optional[int] = None) -> List[Word]:
    """Constant probes plus every nearly-constant probe in the window.

    The nearly-constant probe for (position, color) keeps its base color
    distinct from the off color so the off cell is informative.
    """
    colors = list(colors)
    if not colors:
        raise ValueError("need at least one color")
    limit = window if length is None else min(window, length)
    probes = [_probe_word(c, None, length) for c in colors]
    if len(colors) == 1:
        return probes
    for pos in range(limit):
        for off_color in colors:
            base = colors[0] if off_color != colors[0] else colors[1]
            probes.append(_probe_word(base, (pos, off_color), length))
    return probes


def mastermind_probe_deduce(answers: Dict[Word, MastermindFeedback],
                            window: int, colors: Sequence[int],
                            length: Optional[int] = None) -> Word:
    """Recover the codeword from the probe family's count answers.

    The constant probe for color c answers (count of c, 0, rest), giving
    the full color census.  A nearly-constant probe with off color c' at
    position p answers with rearrangeable count 0 exactly when c' sits at
    p, provided c' occurs in the codeword at all: otherwise its one
    misplaced peg could trade places with a peg of c' elsewhere.  Those
    two facts pin every windowed position; the base color of an infinite
    codeword is the one with an infinite census.
    """
    colors = list(colors)
    state = DeductionState()
    for c in colors:
        fb = answers.get(_probe_word(c, None, length))
        if fb is None:
            raise OracleInconsistency(f"missing constant probe for color {c}")
        if fb.rho != ZERO:
            raise OracleInconsistency(
                "a constant guess has nothing to rearrange; answer is corrupt")
        state.counts[c] = fb.kappa

    if length is None:
        base_colors = [c for c in colors if state.counts[c].is_omega]
        if len(base_colors) != 1:
            raise OracleInconsistency(
                "codeword is not constant-plus-exceptions over these colors")
        base = base_colors[0]
        limit = window
    else:
        if window < length:
            raise WindowTruncation(
                f"window {window} leaves cells of a length-{length} board unprobed")
        base = None
        limit = length
        if sum((n.finite() for n in state.counts.values()), 0) != length:
            raise OracleInconsistency("census does not fill the board")

    occurring = [c for c in colors if state.counts[c] != ZERO]
    if len(colors) == 1:
        return _probe_word(colors[0], None, length)

    cells: Dict[int, int] = {}
    for pos in range(limit):
        placed = []
        for c in occurring:
            fb = answers.get(_probe_word(
                colors[0] if c != colors[0] else colors[1], (pos, c), length))
            if fb is None:
                raise OracleInconsistency(f"missing probe for cell {pos} color {c}")
            there = fb.rho == ZERO
            state.facts[(pos, c)] = there
            if there:
                placed.append(c)
        if len(placed) != 1:
            raise OracleInconsistency(
                f"answers place {len(placed)} colors at position {pos}")
        cells[pos] = placed[0]

    if length is not None:
        return FiniteWord.from_symbols([cells[p] for p in range(length)])
    word = ClosedFormWord(Constant(base),
                          {p: v for p, v in cells.items() if v != base})
    return word


class CountProbeStrategy(Strategy):
    """Play the count-probe family, then claim the deduced word at omega."""

    name = "probe"

    def __init__(self, window: int, colors: Optional[Sequence[int]] = None):
        if window < 1:
            raise ValueError("window must be positive")
        self.window = window
        self.colors = list(colors) if colors is not None else None

    def begin(self, dictionary: Dictionary, mode: str) -> None:
        if mode != "mastermind":
            raise StrategyError("count probes read rearrangement feedback only")
        super().begin(dictionary, mode)
        if self.colors is None:
            self.colors = list(range(dictionary.alphabet.size))
        self.probes = mastermind_probe_family(
            self.window, self.colors, dictionary.length)

    def next_move(self, history: Sequence[HistoryEntry]) -> Move:
        i = len(history)
        if i < len(self.probes):
            return Guess(OrdinalStage(0, i + 1), self.probes[i])
        answers = {word: feedback for _, word, feedback in history}
        word = mastermind_probe_deduce(
            answers, self.window, self.colors, self.dictionary.length)
        return Claim(STAGE_OMEGA, word)


# ---------------------------------------------------------------------------
# correctness-count decoders

CountOracle = Callable[[FiniteWord], Union[int, Cardinal]]


def _count(oracle: CountOracle, word: FiniteWord) -> int:
    return as_cardinal(oracle(word)).finite()


def correctness_decoder_dup(oracle: CountOracle, length: int, num_colors: int,
                            seed: Optional[FiniteWord] = None) -> FiniteWord:
    """Reconstruct a hidden word from its correct-position counts.

    Queries are single-cell variations of one fixed seed.  A count one
    above the seed's pins the varied cell to the new color; a count one
    below proves the seed was already correct there.  Uses at most
    1 + length * (num_colors - 1) queries.
    """
    if seed is None:
        seed = FiniteWord.from_runs([(0, length)])
    if seed.size() != length:
        raise ValueError("seed length mismatch")
    k = _count(oracle, seed)
    if k == length:
        return seed
    out = seed.symbols.copy()
    for pos in range(length):
        base = int(out[pos])
        resolved = False
        for color in range(num_colors):
            if color == base:
                continue
            c = _count(oracle, seed.replace(pos, color))
            if c == k + 1:
                out[pos] = color
                resolved = True
                break
            if c == k - 1:
                resolved = True  # the seed's own color was correct here
                break
            if c != k:
                raise OracleInconsistency(
                    f"count jumped from {k} to {c} on a one-cell change")
        if not resolved:
            raise OracleInconsistency(
                f"no color change moved the count at position {pos}")
    return FiniteWord.from_symbols(out)


def injective_swap_decoder(oracle: CountOracle, seed: FiniteWord,
                           colors: Optional[Sequence[int]] = None) -> FiniteWord:
    """Reconstruct a hidden injective word; every query stays injective.

    Works position by position on a running word with a known count.
    Unused colors are tried first: a count up pins the cell, a count
    down proves it was already correct.  Otherwise the cell's true color
    sits somewhere in the running word, and some transposition with a
    later cell raises the count.  A raise of two fixes both cells.  A
    raise of one means exactly one of the two landed; re-swapping the
    lower-index cell against every other position settles which, since a
    correct cell only ever loses count when moved.
    """
    if not check_injective(seed):
        raise StrategyError("seed must be injective")
    cur = [int(s) for s in seed.symbols]
    L = len(cur)
    pool = sorted(set(cur) if colors is None else set(colors))
    if not set(cur) <= set(pool):
        raise ValueError("seed uses colors outside the pool")

    def ask(symbols: List[int]) -> int:
        return _count(oracle, FiniteWord.from_symbols(symbols))

    k = ask(cur)
    if k == L:
        return FiniteWord.from_symbols(cur)
    resolved = [False] * L

    def swap_delta(word: List[int], i: int, j: int, base_count: int) -> int:
        word[i], word[j] = word[j], word[i]
        delta = ask(word) - base_count
        word[i], word[j] = word[j], word[i]
        if not -2 <= delta <= 2:
            raise OracleInconsistency(f"transposition moved the count by {delta}")
        return delta

    for pos in range(L):
        if k == L:
            break
        if resolved[pos]:
            continue
        # unused colors first; displacing the cell's color frees it for later
        for color in [c for c in pool if c not in set(cur)]:
            trial = list(cur)
            trial[pos] = color
            c = ask(trial)
            if c == k + 1:
                cur, k = trial, k + 1
                resolved[pos] = True
                break
            if c == k - 1:
                resolved[pos] = True
                break
            if c != k:
                raise OracleInconsistency(
                    f"count jumped from {k} to {c} on a one-cell change")
        while not resolved[pos]:
            rising = None
            for q in range(pos + 1, L):
                if resolved[q]:
                    continue
                delta = swap_delta(cur, pos, q, k)
                if delta >= 1:
                    rising = (q, delta)
                    break
            if rising is None:
                # the true color would sit at some later cell and its
                # transposition would raise the count; none did
                resolved[pos] = True
                break
            q, delta = rising
            swapped = list(cur)
            swapped[pos], swapped[q] = swapped[q], swapped[pos]
            if delta == 2:
                cur, k = swapped, k + 2
                resolved[pos] = resolved[q] = True
                continue
            # exactly one of the two moved cells landed; test the lower
            # one: if it landed, every further swap of it drops the count
            landed_low = True
            for r in range(L):
                if r in (pos, q):
                    continue
                if swap_delta(swapped, pos, r, k + 1) >= 0:
                    landed_low = False
                    break
            cur, k = swapped, k + 1
            if landed_low:
                resolved[pos] = True
            else:
                resolved[q] = True  # the higher cell landed; keep working pos

    if ask(cur) != L:
        raise OracleInconsistency("decoded word does not reach a full count")
    return FiniteWord.from_symbols(cur)


# ---------------------------------------------------------------------------
# decoder strategies (replay the imperative decoders over a transcript)


class _NeedQuery(Exception):
    def __init__(self, word: FiniteWord):
        self.word = word


class _ReplayOracle:
    """Feed recorded answers in order; flag the first unanswered query."""

    def __init__(self, answers: List[int]):
        self.answers = answers
        self.cursor = 0

    def __call__(self, word: FiniteWord) -> int:
        if self.cursor < len(self.answers):
            value = self.answers[self.cursor]
            self.cursor += 1
            return value
        raise _NeedQuery(word)


def _correct_count(feedback: object) -> int:
    if isinstance(feedback, SimplifiedFeedback):
        return feedback.correct.finite()
    if isinstance(feedback, MastermindFeedback):
        return feedback.kappa.finite()
    raise StrategyError("decoders read count feedback only")


class DecoderStrategy(Strategy):
    """Drive a count decoder as a stepping strategy.

    Each call replays the recorded counts through the decoder; the first
    query past the transcript becomes the next guess, and a completed
    run becomes the claim.  ``variant`` picks the single-cell decoder
    (``dup``) or the transposition decoder (``inj``).
    """

    def __init__(self, variant: str):
        if variant not in ("dup", "inj"):
            raise ValueError(f"unknown decoder variant: {variant}")
        self.variant = variant
        self.name = f"decoder-{variant}"

    def begin(self, dictionary: Dictionary, mode: str) -> None:
        if mode not in ("mastermind", "simplified"):
            raise StrategyError("decoders read count feedback only")
        if dictionary.length is None:
            raise StrategyError("decoders need a finite board")
        super().begin(dictionary, mode)

    def _run(self, oracle: CountOracle) -> FiniteWord:
        d = self.dictionary
        if self.variant == "dup":
            return correctness_decoder_dup(oracle, d.length, d.alphabet.size)
        seed = FiniteWord.from_symbols(list(range(d.length)))
        return injective_swap_decoder(oracle, seed,
                                      colors=range(d.alphabet.size))

    def next_move(self, history: Sequence[HistoryEntry]) -> Move:
        answers = [_correct_count(feedback) for _, _, feedback in history]
        try:
            word = self._run(_ReplayOracle(answers))
        except _NeedQuery as query:
            return Guess(_finite_stage(history), query.word)
        return Claim(STAGE_OMEGA, word)
