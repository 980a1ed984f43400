"""Match running, transcripts, replay checks, and winning-set search.

A match pits a guessing strategy against an answering opponent: either
a hidden codeword scored by an honest referee, or one of the adaptive
answerers that commit to their codeword only gradually.  Every match
produces a transcript that serializes to JSON lines and can later be
replayed against a candidate codeword to confirm the recorded answers.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .adversaries import (AdversaryError, BLUE, ConsistentSet, MadsterState,
                          PromiseLedger, RED, absurdle_answer,
                          madster_answer_dup, madster_answer_nodup,
                          promise_adversary_answer)
from .cardinal import Fin, OMEGA, OrdinalStage, STAGE_OMEGA
from .dictionaries import CompleteDictionary, Dictionary
from .feedback import (MastermindFeedback, mastermind_feedback,
                       simplified_feedback, wordle_feedback)
from .serialize import (feedback_from_json, feedback_to_json, word_from_json,
                        word_to_json)
from .strategies import Claim, EXHAUSTED, Guess, HistoryEntry, Strategy
from .words import (Alphabet, ClosedFormWord, FiniteWord, LengthMismatch, Word)

# Matches against the committing answerers run this many finite stages
# by default; hidden codewords get ten stages per cell instead.
ADVERSARY_STAGES = 200

# Winning-set questions are answered by full enumeration, so candidate
# spaces are kept small.
SPACE_CAP = 10_000


class ArenaError(ValueError):
    """A match, transcript, or replay request is malformed."""


def _dump(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _feedback_fn(mode: str):
    if mode == "wordle":
        return wordle_feedback
    if mode == "mastermind":
        return mastermind_feedback
    if mode == "simplified":
        return simplified_feedback
    raise ArenaError(f"unknown mode {mode!r}")


def _feedback_key(fb) -> str:
    """Canonical comparison key; uniform across feedback families."""
    return _dump(feedback_to_json(fb))


# ---------------------------------------------------------------------------
# outcomes and transcripts


@dataclass(frozen=True)
class Won:
    stage: OrdinalStage


@dataclass(frozen=True)
class Survived:
    horizon: OrdinalStage


@dataclass(frozen=True)
class Exhausted:
    pass


Outcome = Union[Won, Survived, Exhausted]


def _outcome_to_json(outcome: Optional[Outcome]):
    if outcome is None:
        return None
    if isinstance(outcome, Won):
        return {"result": "won", "stage": outcome.stage.to_json()}
    if isinstance(outcome, Survived):
        return {"result": "survived", "horizon": outcome.horizon.to_json()}
    if isinstance(outcome, Exhausted):
        return {"result": "exhausted"}
    raise ArenaError(f"unknown outcome {outcome!r}")


def _outcome_from_json(data) -> Optional[Outcome]:
    if data is None:
        return None
    result = data.get("result")
    if result == "won":
        return Won(OrdinalStage.from_json(data["stage"]))
    if result == "survived":
        return Survived(OrdinalStage.from_json(data["horizon"]))
    if result == "exhausted":
        return Exhausted()
    raise ArenaError(f"unknown outcome {result!r}")


@dataclass
class Transcript:
    """One match: every answered guess plus how the match ended.

    ``invalid`` is set when play broke the rules (a guess from outside
    the dictionary, or one the opponent rejects); such transcripts
    carry no outcome and cannot be replayed.
    """

    mode: str
    opponent: str
    dictionary: Dict[str, Any]
    entries: List[Tuple[OrdinalStage, Word, Any]] = field(default_factory=list)
    outcome: Optional[Outcome] = None
    claim: Optional[Tuple[OrdinalStage, Word]] = None
    invalid: Optional[str] = None

    def append(self, stage: OrdinalStage, word: Word, feedback) -> None:
        if self.entries and not self.entries[-1][0] < stage:
            raise ArenaError("stages must strictly increase along a transcript")
        self.entries.append((stage, word, feedback))

    def to_jsonl(self) -> str:
        """Header line, one line per answered stage, footer line."""
        lines = [_dump({"dictionary": self.dictionary,
                        "mode": self.mode,
                        "opponent": self.opponent})]
        for stage, word, fb in self.entries:
            lines.append(_dump({"feedback": feedback_to_json(fb),
                                "guess": word_to_json(word),
                                "stage": stage.to_json()}))
        claim = None
        if self.claim is not None:
            claim = {"stage": self.claim[0].to_json(),
                     "word": word_to_json(self.claim[1])}
        lines.append(_dump({"claim": claim,
                            "invalid": self.invalid,
                            "outcome": _outcome_to_json(self.outcome)}))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_jsonl(text: str) -> "Transcript":
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
        if len(rows) < 2:
            raise ArenaError("a transcript needs a header and a footer line")
        head, tail = rows[0], rows[-1]
        t = Transcript(head["mode"], head["opponent"], head["dictionary"])
        for row in rows[1:-1]:
            t.append(OrdinalStage.from_json(row["stage"]),
                     word_from_json(row["guess"]),
                     feedback_from_json(row["feedback"]))
        t.outcome = _outcome_from_json(tail.get("outcome"))
        if tail.get("claim") is not None:
            t.claim = (OrdinalStage.from_json(tail["claim"]["stage"]),
                       word_from_json(tail["claim"]["word"]))
        t.invalid = tail.get("invalid")
        return t


# ---------------------------------------------------------------------------
# candidate spaces


@dataclass(frozen=True)
class WordSpace:
    """A small, fully enumerated universe of candidate codewords."""

    kind: str
    words: Tuple[Word, ...]

    @staticmethod
    def complete(alphabet_size: int, length: int) -> "WordSpace":
        if alphabet_size < 1 or length < 0:
            raise ArenaError("need a positive alphabet and nonnegative length")
        if alphabet_size ** length > SPACE_CAP:
            raise ArenaError(f"space larger than {SPACE_CAP} words")
        words = tuple(FiniteWord.from_symbols(t)
                      for t in itertools.product(range(alphabet_size),
                                                 repeat=length))
        return WordSpace("complete", words)

    @staticmethod
    def injective(alphabet_size: int, length: Optional[int] = None) -> "WordSpace":
        if length is None:
            length = alphabet_size
        if not 0 <= length <= alphabet_size:
            raise ArenaError("injective words need enough symbols")
        if math.perm(alphabet_size, length) > SPACE_CAP:
            raise ArenaError(f"space larger than {SPACE_CAP} words")
        words = tuple(FiniteWord.from_symbols(p)
                      for p in itertools.permutations(range(alphabet_size),
                                                      length))
        return WordSpace("injective", words)

    @staticmethod
    def explicit(words: Iterable[Word]) -> "WordSpace":
        bundle = tuple(words)
        if len(bundle) > SPACE_CAP:
            raise ArenaError(f"space larger than {SPACE_CAP} words")
        return WordSpace("explicit", bundle)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)


def is_winning_set(guesses: Sequence[Word], space: WordSpace, mode: str) -> bool:
    """Do the answer vectors over ``guesses`` separate every codeword?

    True exactly when no two distinct words in the space would answer
    every guess identically, i.e. the guesses suffice to identify any
    codeword drawn from the space.
    """
    answer = _feedback_fn(mode)
    seen: Dict[Tuple[str, ...], Word] = {}
    for w in space:
        sig = tuple(_feedback_key(answer(w, g)) for g in guesses)
        other = seen.get(sig)
        if other is not None and other != w:
            return False
        seen[sig] = w
    return True


# ---------------------------------------------------------------------------
# opponents


class Opponent:
    """Answering side of a match."""

    kind: str = "?"

    def __init__(self, dictionary: Dictionary, mode: str):
        self.dictionary = dictionary
        self.mode = mode

    def answer(self, guess: Word):
        raise NotImplementedError

    def won_by(self, feedback) -> bool:
        """Does this feedback end the match in the guesser's favor?"""
        raise NotImplementedError

    def resolve_claim(self, word: Word) -> bool:
        raise NotImplementedError

    def witness(self, length: int) -> FiniteWord:
        raise NotImplementedError


class HiddenCodeword(Opponent):
    """Honest referee scoring every guess against a fixed codeword."""

    kind = "hidden"

    def __init__(self, code: Word, dictionary: Dictionary, mode: str = "wordle"):
        _feedback_fn(mode)  # validates the mode name
        super().__init__(dictionary, mode)
        try:
            ok = dictionary.contains(code)
        except LengthMismatch:
            ok = False
        if not ok:
            raise ArenaError("the hidden codeword must come from the dictionary")
        self.code = code

    def answer(self, guess: Word):
        return _feedback_fn(self.mode)(self.code, guess)

    def won_by(self, feedback) -> bool:
        if self.mode == "wordle":
            return feedback.all_green
        return feedback.is_win(self.code.length)

    def resolve_claim(self, word: Word) -> bool:
        return word == self.code

    def witness(self, length: int) -> FiniteWord:
        if isinstance(self.code, FiniteWord):
            if length != self.code.size():
                raise ArenaError("witness length must match the board")
            return self.code
        return self.code.prefix(length)


class AbsurdleOpponent(Opponent):
    """Keeps the largest consistent candidate class at every stage."""

    kind = "absurdle"

    def __init__(self, dictionary: Dictionary):
        if dictionary.size is None or dictionary.size == 0:
            raise ArenaError("largest-class play needs a finite nonempty dictionary")
        super().__init__(dictionary, "wordle")
        self.state = ConsistentSet(list(dictionary))

    def answer(self, guess: Word):
        return absurdle_answer(self.state, guess)

    def won_by(self, feedback) -> bool:
        return feedback.all_green

    def resolve_claim(self, word: Word) -> bool:
        return len(self.state.remaining) == 1 and self.state.remaining[0] == word

    def witness(self, length: int) -> FiniteWord:
        return self.state.sample_witness()


class PromiseOpponent(Opponent):
    """Gradually commits an injective codeword on an unbounded alphabet."""

    kind = "promise"

    def __init__(self, dictionary: Optional[Dictionary] = None):
        if dictionary is None:
            dictionary = CompleteDictionary(Alphabet(None), None)
        if dictionary.length is not None:
            raise ArenaError("promise play needs an infinite board")
        super().__init__(dictionary, "wordle")
        self.ledger = PromiseLedger()

    def answer(self, guess: Word):
        return promise_adversary_answer(self.ledger, guess, self.ledger.stage)

    def won_by(self, feedback) -> bool:
        return feedback.all_green

    def resolve_claim(self, word: Word) -> bool:
        self.ledger.diverge_from(word)
        return False

    def witness(self, length: int) -> FiniteWord:
        return _promise_witness(self.ledger, length)


class MadsterDupOpponent(Opponent):
    """Count-feedback answerer whose codeword stays red and blue."""

    kind = "madster-dup"

    def __init__(self, dictionary: Optional[Dictionary] = None):
        if dictionary is None:
            dictionary = CompleteDictionary(Alphabet(None), None)
        if dictionary.length is not None:
            raise ArenaError("this opponent needs an infinite board")
        super().__init__(dictionary, "mastermind")
        self.state = MadsterState()

    def answer(self, guess: Word):
        return madster_answer_dup(self.state, guess)

    def won_by(self, feedback) -> bool:
        return feedback.is_win(OMEGA)

    def resolve_claim(self, word: Word) -> bool:
        self.state.diverge_from(word)
        return False

    def witness(self, length: int) -> FiniteWord:
        return _madster_witness(self.state, length)


class MadsterNodupOpponent(Opponent):
    """Stateless count answers against injective guesses.

    Nothing is ever pinned, so claims are refuted by exhibiting any
    injective word that differs from the claim; consistency of the
    answers themselves is backed by the generic pair construction.
    """

    VARIANTS = ("full", "simplified", "uncountable")

    def __init__(self, variant: str = "full",
                 dictionary: Optional[Dictionary] = None):
        if variant not in self.VARIANTS:
            raise ArenaError(f"unknown variant {variant!r}")
        if dictionary is None:
            dictionary = CompleteDictionary(Alphabet(None), None)
        if dictionary.length is not None:
            raise ArenaError("this opponent needs an infinite board")
        mode = "simplified" if variant == "simplified" else "mastermind"
        super().__init__(dictionary, mode)
        self.variant = variant
        self.kind = f"madster-nodup:{variant}"
        self.claims: List[Word] = []

    def answer(self, guess: Word):
        return madster_answer_nodup(guess, self.variant)

    def won_by(self, feedback) -> bool:
        return feedback.is_win(OMEGA)

    def resolve_claim(self, word: Word) -> bool:
        self.claims.append(word)
        return False

    def witness(self, length: int) -> FiniteWord:
        symbols = list(range(length))
        for claim in self.claims:
            if all(claim.eval_at(p) == symbols[p] for p in range(length)):
                if length < 2:
                    raise ArenaError("need two cells to display a divergence")
                symbols[0], symbols[1] = symbols[1], symbols[0]
        return FiniteWord.from_symbols(symbols)


def _promise_witness(ledger: PromiseLedger, length: int) -> FiniteWord:
    top = max(ledger.cell_letter, default=-1)
    if top >= length:
        raise ArenaError(
            f"infeasible length {length}: cells up to {top} are already pinned")
    return ledger.extend_witness(length)


def _madster_witness(state: MadsterState, length: int) -> FiniteWord:
    if len(state.prefix) > length:
        raise ArenaError(
            f"infeasible length {length}: {len(state.prefix)} cells are already pinned")
    return state.extend_witness(length)


def witness_extend(session, length: int) -> FiniteWord:
    """A codeword prefix honoring every commitment the session has made.

    Pending obligations that can land below ``length`` are kept in the
    returned prefix as well.  Raises when cells at or past ``length``
    are already pinned, so no prefix of that length can be faithful.
    """
    if length < 1:
        raise ArenaError("witness length must be positive")
    if isinstance(session, Opponent):
        return session.witness(length)
    if isinstance(session, PromiseLedger):
        return _promise_witness(session, length)
    if isinstance(session, MadsterState):
        return _madster_witness(session, length)
    if isinstance(session, ConsistentSet):
        return session.sample_witness()
    raise ArenaError(f"no witness extension for {type(session).__name__}")


# ---------------------------------------------------------------------------
# match runner


def default_horizon(opponent: Opponent) -> OrdinalStage:
    """Ten stages per cell against a hidden finite codeword, one limit
    stage on infinite boards, and a fixed survival run against the
    committing answerers."""
    if opponent.kind == "hidden":
        n = opponent.dictionary.length
        return STAGE_OMEGA if n is None else OrdinalStage(0, 10 * n)
    return OrdinalStage(0, ADVERSARY_STAGES)


def run_match(strategy: Strategy, opponent: Opponent,
              horizon: Optional[OrdinalStage] = None,
              move_cap: int = 100_000) -> Transcript:
    """Play one match to its end and return the transcript.

    The opponent answers every legal guess until the strategy wins,
    claims, gives up, or would move past the horizon.  A guess from
    outside the dictionary, or one the opponent rejects, stops play and
    marks the transcript invalid.  Identical inputs replay the exact
    same match: nothing here draws randomness.
    """
    if horizon is None:
        horizon = default_horizon(opponent)
    transcript = Transcript(opponent.mode, opponent.kind,
                            opponent.dictionary.describe())
    strategy.begin(opponent.dictionary, opponent.mode)
    history: List[HistoryEntry] = []
    for _ in range(move_cap):
        move = strategy.next_move(history)
        if move is EXHAUSTED:
            transcript.outcome = Exhausted()
            return transcript
        if horizon < move.stage:
            transcript.outcome = Survived(horizon)
            return transcript
        if isinstance(move, Claim):
            transcript.claim = (move.stage, move.word)
            if opponent.resolve_claim(move.word):
                transcript.outcome = Won(move.stage)
            else:
                transcript.outcome = Survived(move.stage)
            return transcript
        try:
            legal = opponent.dictionary.contains(move.word)
        except LengthMismatch:
            legal = False
        if not legal:
            transcript.invalid = f"stage {move.stage.to_json()}: guess is outside the dictionary"
            return transcript
        try:
            fb = opponent.answer(move.word)
        except AdversaryError as err:
            transcript.invalid = f"stage {move.stage.to_json()}: {err}"
            return transcript
        transcript.append(move.stage, move.word, fb)
        history.append((move.stage, move.word, fb))
        if opponent.won_by(fb):
            transcript.outcome = Won(move.stage)
            return transcript
    raise ArenaError("move cap reached before any outcome")


# ---------------------------------------------------------------------------
# replay checking


def replay_check(transcript: Transcript, candidate: Word) -> bool:
    """Does ``candidate`` explain every answer in the transcript?

    Hidden-codeword and largest-class transcripts are rechecked exactly
    by rescoring each guess.  For the committing answerers the
    candidate is a finite prefix: pinned cells must reproduce the
    recorded matches and the recorded counts must agree with what the
    prefix shows; cells past the prefix stay unchecked.
    """
    if transcript.invalid:
        raise ArenaError("invalid transcripts cannot be replayed")
    kind = transcript.opponent
    if kind in ("hidden", "absurdle"):
        answer = _feedback_fn(transcript.mode)
        return all(_feedback_key(answer(candidate, g)) == _feedback_key(fb)
                   for _, g, fb in transcript.entries)
    if kind == "promise":
        return _replay_promise(transcript.entries, candidate)
    if kind == "madster-dup":
        return _replay_madster_dup(transcript.entries, candidate)
    if kind.startswith("madster-nodup:"):
        variant = kind.split(":", 1)[1]
        if isinstance(candidate, FiniteWord):
            if len(set(candidate.symbols.tolist())) != candidate.size():
                return False  # these boards hold injective words only
        return all(_feedback_key(madster_answer_nodup(g, variant)) == _feedback_key(fb)
                   for _, g, fb in transcript.entries)
    raise ArenaError(f"unknown opponent kind {kind!r}")


def _require_prefix(candidate: Word) -> FiniteWord:
    if not isinstance(candidate, FiniteWord):
        raise ArenaError("replay committing answerers against a finite prefix")
    return candidate


def _replay_promise(entries, candidate: Word) -> bool:
    candidate = _require_prefix(candidate)
    n = candidate.size()
    for _, g, fb in entries:
        for p in range(n):
            if (candidate.eval_at(p) == g.eval_at(p)) != (p in fb.green):
                return False
        for letter, count in fb.yellow_counts.items():
            if count == Fin(1):
                placed = sum(1 for p in range(n)
                             if candidate.eval_at(p) == letter)
                if placed > 1:
                    return False
    return True


def _replay_madster_dup(entries, candidate: Word) -> bool:
    candidate = _require_prefix(candidate)
    n = candidate.size()
    for _, g, fb in entries:
        reds = g.positions_of(RED)
        blues = g.positions_of(BLUE)
        foreign = reds.union(blues).complement().cardinality()
        if reds.is_cofinite() or blues.is_cofinite():
            if fb.kappa != OMEGA or fb.epsilon != OMEGA:
                return False
            main = RED if reds.is_cofinite() else BLUE
            off = (reds if main == RED else blues).missing_positions()
            if not off:
                if fb.rho != Fin(0):
                    return False
            elif max(off) < n:
                planted = sum(1 for p in off if candidate.eval_at(p) == main)
                stray = sum(1 for p in off
                            if g.eval_at(p) == 1 - main
                            and candidate.eval_at(p) != 1 - main)
                if fb.rho != Fin(planted + stray):
                    return False
            elif fb.rho == OMEGA:
                return False
        elif reds.is_infinite or blues.is_infinite:
            if _feedback_key(fb) != _feedback_key(
                    MastermindFeedback(OMEGA, OMEGA, foreign)):
                return False
        else:
            primary = sorted(set(reds.finite_positions())
                             | set(blues.finite_positions()))
            if fb.epsilon != OMEGA:
                return False
            if not primary or max(primary) < n:
                hits = sum(1 for p in primary
                           if candidate.eval_at(p) == g.eval_at(p))
                if (fb.kappa, fb.rho) != (Fin(hits), Fin(len(primary) - hits)):
                    return False
            elif fb.kappa == OMEGA or fb.rho == OMEGA:
                return False
    return True
