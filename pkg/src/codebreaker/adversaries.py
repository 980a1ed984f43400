"""Opponent engines that answer guesses without a fixed codeword.

Four engines, all deterministic:

  * ``ConsistentSet`` / ``absurdle_answer``: finite-dictionary play that
    always answers with the feedback pattern keeping the most candidate
    codewords alive (ties: fewest greens, then least pattern).
  * ``PromiseLedger`` / ``promise_adversary_answer``: tile feedback over
    an unbounded alphabet.  The engine never fixes a codeword; it makes
    finitely many cell commitments per stage, chosen so that no strategy
    can force an all-green answer at a finite stage, while the
    commitments converge to a real codeword.
  * ``MadsterState`` / ``madster_answer_dup``: count feedback against a
    gradually committed red/blue word.  Answers follow the guess's shape
    (how much of it is red or blue, and how) and queued obligations are
    discharged a fixed batch per stage, so every answer stays realizable.
  * ``madster_answer_nodup``: stateless count feedback for boards where
    no word may repeat a color.

``build_generic_pair`` constructs two distinct lazy codewords meeting
agreement and disagreement quotas against a finite guess list; the
returned certificate lists the witnessing positions.
"""

from __future__ import annotations

from collections import deque
from typing import Callable, Deque, Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from .cardinal import Cardinal, Fin, OMEGA, ZERO
from .feedback import (
    GREEN, MastermindFeedback, SimplifiedFeedback, TricolorClosed,
    TricolorFinite, wordle_feedback,
)
from .positions import PositionSet
from .words import (
    ClosedFormWord, Constant, FiniteWord, LazyWord, Periodic, Shift, Word,
    check_injective,
)

RED, BLUE = 0, 1

_SCAN_CAP = 1 << 20


class AdversaryError(ValueError):
    """A guess the engine cannot classify, or corrupted session state."""


def _scan_least(pred: Callable[[int], bool], what: str) -> int:
    for p in range(_SCAN_CAP):
        if pred(p):
            return p
    raise AdversaryError(f"no {what} found below {_SCAN_CAP}; state is corrupt")


def _require_closed(guess: Word) -> ClosedFormWord:
    if not isinstance(guess, ClosedFormWord):
        raise AdversaryError(
            "opponent engines classify structured infinite guesses only")
    return guess


# ---------------------------------------------------------------------------
# largest-class tile play on a finite dictionary


class ConsistentSet:
    """The candidate codewords still consistent with every answer given."""

    def __init__(self, members: Sequence[FiniteWord]):
        remaining = list(members)
        if not remaining:
            raise ValueError("the candidate set must start nonempty")
        self.remaining: List[FiniteWord] = remaining

    def sample_witness(self) -> FiniteWord:
        return self.remaining[0]


def absurdle_answer(state: ConsistentSet, guess: FiniteWord) -> TricolorFinite:
    """Answer with the pattern whose candidate class is largest.

    Ties prefer fewer greens, then the smallest pattern with tiles
    ordered gray < yellow < green per cell.  The surviving class replaces
    ``state.remaining``, so all-green can only ever be answered when the
    guess is the one word left.
    """
    if not state.remaining:
        raise AdversaryError("no candidate codeword remains")
    groups: Dict[tuple, List[FiniteWord]] = {}
    for w in state.remaining:
        groups.setdefault(wordle_feedback(w, guess).pattern_key(), []).append(w)
    best = min(groups,
               key=lambda pat: (-len(groups[pat]),
                                sum(1 for t in pat if t == GREEN), pat))
    state.remaining = groups[best]
    return TricolorFinite(np.array(best, dtype=np.int8))


# ---------------------------------------------------------------------------
# promise play on an unbounded alphabet


class PromiseLedger:
    """Finitely many commitments that converge to a codeword.

    ``cell_letter`` and ``letter_cell`` are inverse injective maps: each
    records that the eventual codeword holds that letter in that cell.
    Commitments are never retracted.  ``yellow_once`` holds the letters
    promised to occur exactly once without a fixed cell yet.
    """

    def __init__(self):
        self.cell_letter: Dict[int, int] = {}
        self.letter_cell: Dict[int, int] = {}
        self.yellow_once: Set[int] = set()
        self.stage = 0
        self.guesses: List[ClosedFormWord] = []
        # merged mention sets for letters shown infinitely often somewhere
        self._wide: Dict[int, PositionSet] = {}
        self._wide_done: Set[int] = set()
        self._place_pointer = 0

    # -- queries ------------------------------------------------------

    def shown_at(self, letter: int, pos: int, upto: Optional[int] = None) -> bool:
        """Has any guess (before index ``upto``) shown ``letter`` at ``pos``?"""
        guesses = self.guesses if upto is None else self.guesses[:upto]
        return any(g.eval_at(pos) == letter for g in guesses)

    def check_maps(self) -> bool:
        inv = {v: k for k, v in self.cell_letter.items()}
        return inv == self.letter_cell and len(self.letter_cell) == len(self.cell_letter)

    # -- updates ------------------------------------------------------

    def _commit(self, pos: int, letter: int) -> None:
        if pos in self.cell_letter or letter in self.letter_cell:
            raise AdversaryError("conflicting commitment; state is corrupt")
        self.cell_letter[pos] = letter
        self.letter_cell[letter] = pos

    def extend_witness(self, length: int) -> FiniteWord:
        """A codeword prefix honoring every commitment and answer so far.

        Open cells are committed as they are filled, so later answers
        stay consistent with the returned prefix.
        """
        for p in range(length):
            if p in self.cell_letter:
                continue
            letter = _scan_least(
                lambda c: c not in self.letter_cell and not self.shown_at(c, p),
                "letter for an open cell")
            self._commit(p, letter)
        return FiniteWord.from_symbols(
            [self.cell_letter[p] for p in range(length)])

    def diverge_from(self, word: Word) -> int:
        """Pin a cell where the eventual codeword differs from ``word``.

        Past answers never determine the whole codeword, so when no
        committed cell disagrees yet a fresh one is committed.  Returns
        the disagreeing position.
        """
        for p, letter in self.cell_letter.items():
            if word.eval_at(p) != letter:
                return p
        p = _scan_least(lambda q: q not in self.cell_letter, "an open cell")
        letter = _scan_least(
            lambda c: (c not in self.letter_cell and not self.shown_at(c, p)
                       and c != word.eval_at(p)),
            "a letter avoiding the claimed word")
        self._commit(p, letter)
        return p


def _infinitely_shown_letters(guess: ClosedFormWord) -> List[int]:
    base = guess.base
    if isinstance(base, Constant):
        return [base.color]
    if isinstance(base, Periodic):
        return sorted(set(base.pattern))
    return []  # a shift shows each letter finitely often


def _guess_letter_pool(guess: ClosedFormWord) -> List[int]:
    """The letters needing explicit yellow counts in an answer."""
    base, exc = guess.base, guess.exceptions
    letters = set(exc.values())
    if isinstance(base, Constant):
        letters.add(base.color)
    elif isinstance(base, Periodic):
        letters.update(base.pattern)
    else:
        letters.update(p + base.offset for p in exc)
    return sorted(letters)


def promise_adversary_answer(ledger: PromiseLedger, guess: Word,
                             stage: int) -> TricolorClosed:
    """Answer one guess while committing as little as possible.

    Per stage the ledger grows by: one green per letter newly shown on a
    cofinite set of cells (pinned where the letter just appeared for the
    first time), a letter for the leftmost open cell, and a cell for the
    smallest unplaced letter.  Every choice avoids cells and letters the
    play has already tied together, so no answer is ever contradicted
    and no finite stage shows all green.
    """
    guess = _require_closed(guess)
    if stage != ledger.stage:
        raise ValueError(f"expected stage {ledger.stage}, got {stage}")
    n_before = len(ledger.guesses)
    ledger.guesses.append(guess)
    ledger.stage += 1

    # letters that just became visible on cofinitely many cells get one
    # green apiece, placed where they were never shown before this guess
    for letter in _infinitely_shown_letters(guess):
        occ = guess.positions_of(letter)
        merged = ledger._wide[letter].union(occ) if letter in ledger._wide else occ
        if merged.modulus > 1_000_000:
            raise AdversaryError("mention-set modulus grew past the desk bound")
        ledger._wide[letter] = merged
        if merged.is_cofinite() and letter not in ledger._wide_done:
            ledger._wide_done.add(letter)
            if letter not in ledger.letter_cell:
                spot = _scan_least(
                    lambda p: (guess.eval_at(p) == letter
                               and p not in ledger.cell_letter
                               and not ledger.shown_at(letter, p, upto=n_before)),
                    "fresh cell for a cofinitely shown letter")
                ledger._commit(spot, letter)

    # leftmost open cell gets a letter never shown there
    open_cell = _scan_least(lambda p: p not in ledger.cell_letter, "open cell")
    fresh = _scan_least(
        lambda c: c not in ledger.letter_cell and not ledger.shown_at(c, open_cell),
        "letter for the leftmost open cell")
    ledger._commit(open_cell, fresh)

    # smallest unplaced letter gets a cell where it was never shown
    while ledger._place_pointer in ledger.letter_cell:
        ledger._place_pointer += 1
    unplaced = ledger._place_pointer
    home = _scan_least(
        lambda p: p not in ledger.cell_letter and not ledger.shown_at(unplaced, p),
        "cell for the smallest unplaced letter")
    ledger._commit(home, unplaced)

    # tiles: greens where a committed cell is hit; every other letter of
    # the guess is in the codeword exactly once, so it shows one yellow
    # at its first occurrence unless its committed cell was the hit
    greens = {p for p, c in ledger.cell_letter.items() if guess.eval_at(p) == c}
    counts: Dict[int, Cardinal] = {}
    pool = set(_guess_letter_pool(guess))
    pool.update(c for c in ledger.letter_cell
                if guess.positions_of(c).cardinality())
    for letter in sorted(pool):
        if not guess.positions_of(letter).cardinality():
            continue
        cell = ledger.letter_cell.get(letter)
        if cell is not None and guess.eval_at(cell) == letter:
            continue  # matched letters never show yellow; greens say so
        counts[letter] = Fin(1)
        ledger.yellow_once.add(letter)
    return TricolorClosed(
        green=PositionSet.finite(greens),
        yellow_counts=counts,
        yellow_positions=None,
        yellow_tail_once=isinstance(guess.base, Shift),
    )


# ---------------------------------------------------------------------------
# count-feedback play against a gradually committed red/blue word


class MadsterState:
    """Committed red/blue prefix plus recurring answer obligations.

    The eventual codeword is red and blue only, with both colors
    appearing infinitely often.  ``queue`` holds obligations of the form
    (kind, guess index) where kind says whether to plant an agreement or
    a disagreement under a red or blue peg of that guess; obligations
    recur forever, two are discharged per stage.
    """

    def __init__(self):
        self.prefix: List[int] = []
        self.queue: Deque[Tuple[str, int]] = deque()
        self.guesses: List[ClosedFormWord] = []
        self.stage = 0

    # -- commitment helpers --------------------------------------------

    def _fill_to(self, end: int, guess: Optional[ClosedFormWord] = None) -> None:
        """Commit cells below ``end``: oppose red/blue pegs, alternate else."""
        while len(self.prefix) < end:
            p = len(self.prefix)
            peg = guess.eval_at(p) if guess is not None else None
            if peg == RED:
                self.prefix.append(BLUE)
            elif peg == BLUE:
                self.prefix.append(RED)
            else:
                self.prefix.append(p % 2)

    def _discharge(self, kind: str, idx: int) -> None:
        guess = self.guesses[idx]
        want = RED if kind.endswith("red") else BLUE
        if kind.startswith("offsite"):
            # plant the color under a peg that does not show it
            spot = _scan_least(
                lambda p: p >= len(self.prefix) and guess.eval_at(p) != want,
                "off-color cell for a queued obligation")
            self._fill_to(spot)
            self.prefix.append(want)
            return
        spot = _scan_least(
            lambda p: p >= len(self.prefix) and guess.eval_at(p) == want,
            "peg cell for a queued obligation")
        self._fill_to(spot)
        self.prefix.append(want if kind.startswith("agree") else 1 - want)

    def feasible(self) -> bool:
        """Can every queued obligation still be discharged forever?"""
        for kind, idx in self.queue:
            want = RED if kind.endswith("red") else BLUE
            region = self.guesses[idx].positions_of(want)
            if kind.startswith("offsite"):
                region = region.complement()
            if not region.is_infinite:
                return False
        return True

    def extend_witness(self, length: int) -> FiniteWord:
        """A codeword prefix extending commitments and keeping promises.

        Every queued obligation whose landing cell fits below ``length``
        is honored once more; remaining open cells alternate colors.
        """
        for kind, idx in list(self.queue):
            mark = len(self.prefix)
            self._discharge(kind, idx)
            if len(self.prefix) > length:
                del self.prefix[mark:]  # lands past the window; keep it queued
        self._fill_to(length)
        return FiniteWord.from_symbols(self.prefix[:length])

    def diverge_from(self, word: Word) -> int:
        """Pin a cell where the eventual codeword differs from ``word``."""
        for p in range(len(self.prefix)):
            if self.prefix[p] != word.eval_at(p):
                return p
        p = len(self.prefix)
        self.prefix.append(BLUE if word.eval_at(p) == RED else RED)
        return p

    def matches_below(self, guess: ClosedFormWord, end: int) -> int:
        end = min(end, len(self.prefix))
        return sum(1 for p in range(end) if self.prefix[p] == guess.eval_at(p))


def madster_answer_dup(state: MadsterState, guess: Word) -> MastermindFeedback:
    """Count feedback chosen by the shape of the guess.

    Guesses showing red or blue infinitely often are granted infinite
    correctness; showing both, or one infinitely but not cofinitely,
    also grants infinite rearrangeability.  A guess that is red (or
    blue) on all but finitely many cells pins those finitely many cells
    and gets an exact finite rearrangement count read off them.  Pegs in
    any other color can never match and feed the stuck count.  No answer
    ever declares a win.
    """
    guess = _require_closed(guess)
    state.prefix.append(RED)   # two tint cells per stage keep both
    state.prefix.append(BLUE)  # colors recurring in the codeword
    for _ in range(2):  # keep earlier promises before answering anew
        if not state.queue:
            break
        kind, idx = state.queue.popleft()
        state._discharge(kind, idx)
        state.queue.append((kind, idx))

    reds = guess.positions_of(RED)
    blues = guess.positions_of(BLUE)
    foreign = reds.union(blues).complement().cardinality()
    idx = len(state.guesses)
    state.guesses.append(guess)
    state.stage += 1

    if reds.is_cofinite() or blues.is_cofinite():
        main = RED if reds.is_cofinite() else BLUE
        off_cells = (reds if main == RED else blues).missing_positions()
        state._fill_to(max(off_cells) + 1 if off_cells else 0, guess)
        # stray pegs of the other primary color can move to the infinite
        # supply of that color; main-colored committed cells that were
        # missed can be filled by the cofinitely many main pegs
        missed_cells = sum(1 for p, c in enumerate(state.prefix)
                           if c == main and guess.eval_at(p) != main)
        stray_pegs = sum(1 for p in (off_cells if off_cells else ())
                         if guess.eval_at(p) == 1 - main
                         and state.prefix[p] != 1 - main)
        state.queue.append((f"agree_{'red' if main == RED else 'blue'}", idx))
        return MastermindFeedback(OMEGA, Fin(missed_cells + stray_pegs), OMEGA)

    if reds.is_infinite or blues.is_infinite:
        for color, cells in (("red", reds), ("blue", blues)):
            if cells.is_infinite:
                state.queue.append((f"agree_{color}", idx))
                state.queue.append((f"disagree_{color}", idx))
                # the color must also recur away from its own pegs, or
                # its rearrangeable supply could run dry
                state.queue.append((f"offsite_{color}", idx))
        return MastermindFeedback(OMEGA, OMEGA, foreign)

    # finitely many red/blue pegs: pin their cells, oppose each fresh one
    primary = sorted(reds.finite_positions() | blues.finite_positions())
    state._fill_to(max(primary) + 1 if primary else 0, guess)
    hits = sum(1 for p in primary if state.prefix[p] == guess.eval_at(p))
    return MastermindFeedback(Fin(hits), Fin(len(primary) - hits), OMEGA)


def madster_answer_nodup(guess: Word, mode: str = "full"):
    """Stateless answers for boards that forbid repeated colors.

    ``full`` grants infinite correctness and rearrangeability, with a
    stuck count of zero exactly when the guess uses every color (an
    identity-shaped word whose exceptions permute finitely many cells);
    ``simplified`` reports the two infinite counts only; ``uncountable``
    is the palette-too-big answer where nothing ever matches.
    """
    if mode not in ("full", "simplified", "uncountable"):
        raise ValueError(f"unknown mode {mode!r}")
    guess = _require_closed(guess)
    if not check_injective(guess):
        raise AdversaryError("this board forbids repeated colors in a guess")
    if mode == "uncountable":
        return MastermindFeedback(ZERO, ZERO, OMEGA)
    if mode == "simplified":
        return SimplifiedFeedback(OMEGA, OMEGA)
    uses_all = isinstance(guess.base, Shift) and guess.base.offset == 0
    return MastermindFeedback(OMEGA, OMEGA, ZERO if uses_all else OMEGA)


# ---------------------------------------------------------------------------
# generic codeword pairs


def build_generic_pair(guesswords: Sequence[ClosedFormWord],
                       requirements: Dict[str, int],
                       prefix_len: int) -> Tuple[LazyWord, LazyWord, dict]:
    """Two distinct injective lazy words meeting per-guess quotas.

    Each word secures at least ``requirements['agree']`` cells agreeing
    and ``requirements['disagree']`` cells disagreeing with every guess
    inside the first ``prefix_len`` cells, scheduled round-robin.  The
    certificate lists the witnessing positions per guess and word.
    Beyond the built prefix both words continue with the smallest color
    not yet used, so every color is eventually used and no color ever
    repeats.  Raises when the quotas cannot fit in ``prefix_len``.
    """
    agree_quota = int(requirements.get("agree", 0))
    disagree_quota = int(requirements.get("disagree", 0))
    if agree_quota < 0 or disagree_quota < 0 or prefix_len < 1:
        raise ValueError("quotas must be nonnegative and the prefix nonempty")
    guesses = [_require_closed(g) for g in guesswords]

    approx: Dict[str, List[int]] = {"c": [], "d": []}
    used: Dict[str, Set[int]] = {"c": set(), "d": set()}
    cert: dict = {
        "agree": {"c": {i: [] for i in range(len(guesses))},
                  "d": {i: [] for i in range(len(guesses))}},
        "disagree": {"c": {i: [] for i in range(len(guesses))},
                     "d": {i: [] for i in range(len(guesses))}},
    }

    def push(side: str, value: int) -> int:
        if len(approx[side]) >= prefix_len:
            raise AdversaryError(
                f"prefix budget {prefix_len} too small for the quotas; raise it")
        approx[side].append(value)
        used[side].add(value)
        return len(approx[side]) - 1

    def fresh(side: str, avoid: int = -1) -> int:
        c = 0
        while c in used[side] or c == avoid:
            c += 1
        return c

    todo: Deque[Tuple[str, int, str]] = deque()
    for round_no in range(max(agree_quota, disagree_quota)):
        for i in range(len(guesses)):
            for side in ("c", "d"):
                if round_no < agree_quota:
                    todo.append(("agree", i, side))
                if round_no < disagree_quota:
                    todo.append(("disagree", i, side))
    while todo:
        kind, i, side = todo.popleft()
        guess = guesses[i]
        if kind == "agree":
            # colors already used block agreement cells; pad past them
            while guess.eval_at(len(approx[side])) in used[side]:
                p = len(approx[side])
                push(side, fresh(side, avoid=guess.eval_at(p)))
            p = len(approx[side])
            cert["agree"][side][i].append(push(side, guess.eval_at(p)))
        else:
            p = len(approx[side])
            cert["disagree"][side][i].append(
                push(side, fresh(side, avoid=guess.eval_at(p))))

    common = min(len(approx["c"]), len(approx["d"]))
    if all(approx["c"][p] == approx["d"][p] for p in range(common)):
        # no committed cell separates the words yet; build one, since the
        # open-ended continuations of equal prefixes would coincide
        while len(approx["c"]) < len(approx["d"]):
            push("c", fresh("c"))
        while len(approx["d"]) < len(approx["c"]):
            push("d", fresh("d"))
        if approx["c"] == approx["d"]:
            push("c", fresh("c"))
            push("d", fresh("d", avoid=approx["c"][-1]))

    def make_generator(side: str) -> Callable[[int], int]:
        def generate(n: int) -> int:
            while len(approx[side]) <= n:
                approx[side].append(fresh(side))
                used[side].add(approx[side][-1])
            return approx[side][n]
        return generate

    promise = {"injective": True, "distinct_pair": True,
               "agree_quota": agree_quota, "disagree_quota": disagree_quota,
               "built_length": max(len(approx["c"]), len(approx["d"]))}
    word_c = LazyWord(make_generator("c"), {**promise, "witnesses": cert["agree"]["c"]})
    word_d = LazyWord(make_generator("d"), {**promise, "witnesses": cert["agree"]["d"]})
    return word_c, word_d, cert
