"""Strategy layer: deduction play, enumeration, combinators, probes, decoders."""

from random import Random

import pytest

from codebreaker.cardinal import Fin, OMEGA, STAGE_OMEGA, ZERO, OrdinalStage
from codebreaker.dictionaries import (
    CompleteDictionary, ExplicitDictionary, NerdleDictionary, PatternDictionary,
)
from codebreaker.feedback import (
    MastermindFeedback, mastermind_feedback, simplified_feedback, wordle_feedback,
)
from codebreaker.strategies import (
    Claim, CountProbeStrategy, DecoderStrategy, DeductionState, EXHAUSTED,
    EnumerationStrategy, FreshSymbolStrategy, GreenProbeStrategy, Guess,
    OracleInconsistency, Strategy, StrategyError, WindowTruncation,
    combine_strategies, correctness_decoder_dup, enumeration_next,
    fresh_symbol_next, green_probe_set, injective_swap_decoder,
    interleave_part, interleave_stage, mastermind_probe_deduce,
    mastermind_probe_family,
)
from codebreaker.words import (
    Alphabet, ClosedFormWord, Constant, FiniteWord, check_injective, letters,
)

ABC = letters("ABC")
AB = letters("AB")


def drive_wordle(strategy, d, code, max_guesses=500, early_stop=True):
    """Play a strategy against a fixed codeword; return (trace, outcome)."""
    strategy.begin(d, "wordle")
    history = []
    trace = []
    for _ in range(max_guesses):
        mv = strategy.next_move(history)
        if mv is EXHAUSTED:
            return trace, "exhausted"
        fb = wordle_feedback(code, mv.word)
        trace.append((mv.stage, mv.word))
        if isinstance(mv, Claim):
            return trace, ("claim-win" if mv.word == code else "claim-miss")
        if early_stop and fb.all_green:
            return trace, "win"
        history.append((mv.stage, mv.word, fb))
    return trace, "horizon"


def drive_counts(strategy, d, code, mode="mastermind", max_guesses=3000):
    """Play a count-feedback strategy to its claim; return (history, claim)."""
    strategy.begin(d, mode)
    feedback = mastermind_feedback if mode == "mastermind" else simplified_feedback
    history = []
    for _ in range(max_guesses):
        mv = strategy.next_move(history)
        if isinstance(mv, Claim):
            return history, mv
        history.append((mv.stage, mv.word, feedback(code, mv.word)))
    raise AssertionError("no claim within the guess bound")


# ---------------------------------------------------------------------------
# deduction state


class TestDeductionState:
    def test_greens_pin_and_nongreen_cells_exclude(self):
        st = DeductionState(3, 3)
        code, guess = ABC.parse("BCA"), ABC.parse("AAA")
        st.observe_tiles(guess, wordle_feedback(code, guess))
        assert list(st.greens) == [-1, -1, 0]
        assert st.seen[0, 0] and st.seen[1, 0] and not st.seen[2].any()
        c = st.constraint()
        assert c.required == {2: 0}
        assert c.forbidden == {0: frozenset({0}), 1: frozenset({0})}

    def test_menus_shrink_to_forced_cell(self):
        # a cell that saw all but one symbol and no green is forced
        st = DeductionState(2, 3)
        for sym in (0, 1):
            guess = FiniteWord.from_symbols([sym, sym])
            st.observe_tiles(guess, wordle_feedback(ABC.parse("CC"), guess))
        assert list(st.menu_sizes()) == [1, 1]
        assert fresh_symbol_next(st, CompleteDictionary(ABC, 2)) == ABC.parse("CC")

    def test_oversized_grid_rejected(self):
        with pytest.raises(StrategyError):
            DeductionState(10**7, 100)


# ---------------------------------------------------------------------------
# fresh-symbol play


class TestFreshSymbol:
    def test_three_letter_trace(self):
        d = CompleteDictionary(ABC, 3)
        trace, outcome = drive_wordle(FreshSymbolStrategy(), d, ABC.parse("BCA"))
        assert outcome == "win"
        assert [ABC.render(w) for _, w in trace] == ["AAA", "BBA", "BCA"]
        assert [s for s, _ in trace] == [
            OrdinalStage(0, 1), OrdinalStage(0, 2), OrdinalStage(0, 3)]

    def test_exhaustive_small_boards_win_within_alphabet(self):
        for L in range(1, 5):
            d = CompleteDictionary(ABC, L)
            for i in range(d.size):
                code = d.word_at(i)
                trace, outcome = drive_wordle(FreshSymbolStrategy(), d, code)
                assert outcome == "win" and len(trace) <= 3

    def test_guesses_stay_consistent_with_prior_feedback(self):
        d = CompleteDictionary(ABC, 4)
        for i in range(0, d.size, 7):
            code = d.word_at(i)
            trace, _ = drive_wordle(FreshSymbolStrategy(), d, code)
            st = DeductionState(4, 3)
            for _, g in trace:
                assert st.constraint().allows(g)
                st.observe_tiles(g, wordle_feedback(code, g))

    def test_explicit_dictionaries_win_within_alphabet(self):
        rng = Random(414)
        for _ in range(40):
            n = rng.choice([2, 3, 4, 5])
            L = rng.randint(2, 7)
            alpha = Alphabet(n)
            full = CompleteDictionary(alpha, L)
            members = [full.word_at(i)
                       for i in rng.sample(range(full.size),
                                           rng.randint(1, min(200, full.size)))]
            d = ExplicitDictionary(alpha, members)
            for code in rng.sample(members, min(10, len(members))):
                trace, outcome = drive_wordle(FreshSymbolStrategy(), d, code)
                assert outcome == "win" and len(trace) <= n

    def test_two_letter_forcing_on_a_million_cells(self):
        d = CompleteDictionary(AB, 10**6)
        code = FiniteWord.from_runs([(1, 10**6)])
        trace, outcome = drive_wordle(FreshSymbolStrategy(), d, code, max_guesses=3)
        assert outcome == "win" and len(trace) == 2

    def test_five_letters_on_a_million_cells(self):
        rng = Random(500)
        alpha = Alphabet(5)
        d = CompleteDictionary(alpha, 10**6)
        code = FiniteWord.from_symbols([rng.randrange(5) for _ in range(10**6)])
        trace, outcome = drive_wordle(FreshSymbolStrategy(), d, code, max_guesses=6)
        assert outcome == "win" and len(trace) <= 5

    def test_nerdle_within_alphabet_bound(self):
        d = NerdleDictionary(5)
        eqs = d.equations()
        for i in range(0, len(eqs), 23):
            code = d.word_at(i)
            trace, outcome = drive_wordle(FreshSymbolStrategy(), d, code,
                                          max_guesses=16)
            assert outcome == "win" and len(trace) <= 15

    def test_mode_and_board_guards(self):
        with pytest.raises(StrategyError):
            FreshSymbolStrategy().begin(CompleteDictionary(ABC, 3), "mastermind")
        with pytest.raises(StrategyError):
            FreshSymbolStrategy().begin(CompleteDictionary(ABC, None), "wordle")

    def test_inconsistent_history_raises(self):
        d = ExplicitDictionary(AB, [AB.parse("AA")])
        s = FreshSymbolStrategy()
        s.begin(d, "wordle")
        # feedback claims B is green at cell 0: no member fits
        lie = wordle_feedback(AB.parse("BB"), AB.parse("BA"))
        with pytest.raises(StrategyError):
            s.next_move([(OrdinalStage(0, 1), AB.parse("BA"), lie)])


# ---------------------------------------------------------------------------
# enumeration


class TestEnumeration:
    def test_explicit_pair(self):
        eo = letters("DEOPRV")
        d = ExplicitDictionary(eo, [eo.parse("ERROR"), eo.parse("ORDER")])
        trace, outcome = drive_wordle(EnumerationStrategy(), d, eo.parse("ORDER"))
        assert outcome == "win" and len(trace) == 2

    def test_lexicographic_complete(self):
        d = CompleteDictionary(AB, 2)
        trace, outcome = drive_wordle(EnumerationStrategy(), d, AB.parse("BA"))
        assert outcome == "win"
        assert [AB.render(w) for _, w in trace] == ["AA", "AB", "BA"]

    def test_nerdle_win_at_enumeration_index(self):
        d = NerdleDictionary(5)
        code = d.alphabet.parse("2+2=4")
        index = d.equations().index(tuple(int(s) for s in code.symbols))
        assert index == 134
        trace, outcome = drive_wordle(EnumerationStrategy(), d, code)
        assert outcome == "win" and len(trace) == 135

    def test_exhaustion(self):
        d = ExplicitDictionary(AB, [AB.parse("AA")])
        assert enumeration_next(d, 0) == AB.parse("AA")
        assert enumeration_next(d, 1) is EXHAUSTED
        trace, outcome = drive_wordle(EnumerationStrategy(), d, AB.parse("BB"),
                                      max_guesses=5)
        assert outcome == "exhausted" and len(trace) == 1


# ---------------------------------------------------------------------------
# combining


class _SpyStrategy(Strategy):
    """Enumeration that records every history it is shown."""

    def __init__(self):
        self.seen_histories = []

    def next_move(self, history):
        self.seen_histories.append(list(history))
        word = enumeration_next(self.dictionary, len(history))
        if word is EXHAUSTED:
            return EXHAUSTED
        return Guess(OrdinalStage(0, len(history) + 1), word)


class TestCombine:
    def test_stage_map(self):
        assert interleave_stage(1, 0) == 2
        assert all(interleave_part(interleave_stage(n, k)) == (n, k)
                   for n in range(8) for k in range(8))
        with pytest.raises(ValueError):
            interleave_part(0)

    def test_stage_map_injective_to_1024(self):
        stages = {(1 << n) * (2 * k + 1)
                  for n in range(1024) for k in range(1024)}
        assert len(stages) == 1024 * 1024

    def test_singleton_parts_schedule(self):
        da = ExplicitDictionary(AB, [AB.parse("AA")])
        db = ExplicitDictionary(AB, [AB.parse("BB")])
        s = combine_strategies("interleaved", [(EnumerationStrategy(), da),
                                               (EnumerationStrategy(), db)])
        s.begin(ExplicitDictionary(AB, [AB.parse("AA"), AB.parse("BB")]), "wordle")
        code = AB.parse("BB")
        h = []
        mv = s.next_move(h)
        assert mv.stage == OrdinalStage(0, 1) and AB.render(mv.word) == "AA"
        h.append((mv.stage, mv.word, wordle_feedback(code, mv.word)))
        mv = s.next_move(h)
        assert mv.stage == OrdinalStage(0, 2) and AB.render(mv.word) == "BB"
        h.append((mv.stage, mv.word, wordle_feedback(code, mv.word)))
        assert s.next_move(h) is EXHAUSTED

    def _union_parts(self):
        abcd = letters("ABCD")
        w0 = [abcd.parse(t) for t in ["AAB", "ABA", "BAA", "ABB"]]
        w1 = [abcd.parse(t) for t in ["CCD", "CDC", "DCC", "CDD", "DDD"]]
        union = ExplicitDictionary(abcd, w0 + w1)
        return abcd, w0, w1, union

    def test_interleaved_union_wins_at_scheduled_stage(self):
        abcd, w0, w1, union = self._union_parts()
        for code in w0 + w1:
            s = combine_strategies("interleaved", [
                (EnumerationStrategy(), ExplicitDictionary(abcd, w0)),
                (EnumerationStrategy(), ExplicitDictionary(abcd, w1))])
            trace, outcome = drive_wordle(s, union, code, max_guesses=50)
            assert outcome == "win"
            part = 0 if code in w0 else 1
            k = (w0 if part == 0 else w1).index(code)
            assert trace[-1][0] == OrdinalStage(0, interleave_stage(part, k))

    def test_sequential_union_wins_at_flat_index(self):
        abcd, w0, w1, union = self._union_parts()
        for code in w0 + w1:
            s = combine_strategies("sequential", [
                (EnumerationStrategy(), ExplicitDictionary(abcd, w0)),
                (EnumerationStrategy(), ExplicitDictionary(abcd, w1))])
            trace, outcome = drive_wordle(s, union, code, max_guesses=50)
            assert outcome == "win"
            assert trace[-1][0] == OrdinalStage(0, (w0 + w1).index(code) + 1)

    def test_parts_see_only_their_own_history(self):
        abcd, w0, w1, union = self._union_parts()
        spy0, spy1 = _SpyStrategy(), _SpyStrategy()
        s = combine_strategies("interleaved", [
            (spy0, ExplicitDictionary(abcd, w0)),
            (spy1, ExplicitDictionary(abcd, w1))])
        drive_wordle(s, union, w1[2], max_guesses=50)
        for spy, own in ((spy0, w0), (spy1, w1)):
            for hist in spy.seen_histories:
                assert [w for _, w, _ in hist] == own[:len(hist)]
                assert [st.r for st, _, _ in hist] == list(range(1, len(hist) + 1))

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            combine_strategies("parallel", [EnumerationStrategy()])
        with pytest.raises(ValueError):
            combine_strategies("interleaved", [])


# ---------------------------------------------------------------------------
# green probes


class TestGreenProbes:
    def test_explicit_probe_set_and_claims(self):
        epv = letters("DEOPRV")
        members = [epv.parse(t) for t in ["ERROR", "ORDER", "PROVE"]]
        d = ExplicitDictionary(epv, members)
        probes = green_probe_set(d, 5)
        assert probes == members  # every later witness is already probed
        for code in members:
            # the code's own probe ends the match early
            _, outcome = drive_wordle(GreenProbeStrategy(5), d, code)
            assert outcome == "win"
            # played to the end, the omega claim names the code
            trace, outcome = drive_wordle(GreenProbeStrategy(5), d, code,
                                          early_stop=False)
            assert outcome == "claim-win" and trace[-1][0] == STAGE_OMEGA

    def test_ten_constants(self):
        ten = Alphabet(10)
        d = PatternDictionary(ten, [ClosedFormWord(Constant(c)) for c in range(10)],
                              edit_positions=(), edit_symbols=(), max_edits=0)
        assert len(green_probe_set(d, 4)) == 10
        for c in range(10):
            trace, outcome = drive_wordle(GreenProbeStrategy(4), d,
                                          ClosedFormWord(Constant(c)),
                                          max_guesses=12, early_stop=False)
            assert outcome == "claim-win" and trace[-1][0] == STAGE_OMEGA

    def test_pattern_with_edits_exercises_the_claim_path(self):
        d = PatternDictionary(Alphabet(4), [ClosedFormWord(Constant(0))],
                              edit_positions=(1, 3), edit_symbols=(1, 2, 3),
                              max_edits=2)
        outcomes = {"win": 0, "claim-win": 0}
        for i in range(d.size):
            trace, outcome = drive_wordle(GreenProbeStrategy(6), d, d.word_at(i),
                                          max_guesses=40)
            outcomes[outcome] += 1
            if outcome == "claim-win":
                assert trace[-1][0] == STAGE_OMEGA
        assert outcomes == {"win": 7, "claim-win": 9}

    def test_singleton_dictionary(self):
        d = ExplicitDictionary(AB, [AB.parse("AB")])
        assert len(green_probe_set(d, 2)) == 1
        _, outcome = drive_wordle(GreenProbeStrategy(2), d, AB.parse("AB"))
        assert outcome == "win"

    def test_window_truncation_on_ambiguity(self):
        d = ExplicitDictionary(AB, [AB.parse("AAB"), AB.parse("AAA")])
        with pytest.raises(WindowTruncation):
            drive_wordle(GreenProbeStrategy(2), d, AB.parse("AAA"), max_guesses=10)

    def test_infinite_dictionary_rejected(self):
        with pytest.raises(WindowTruncation):
            GreenProbeStrategy(4).begin(CompleteDictionary(ABC, None), "wordle")

    def test_mode_guard(self):
        with pytest.raises(StrategyError):
            GreenProbeStrategy(4).begin(CompleteDictionary(ABC, 3), "mastermind")


# ---------------------------------------------------------------------------
# count probes


class TestCountProbes:
    def test_single_exception_example(self):
        code = ClosedFormWord(Constant(0), {3: 1})
        family = mastermind_probe_family(6, [0, 1])
        answers = {p: mastermind_feedback(code, p) for p in family}
        assert answers[ClosedFormWord(Constant(0))].as_tuple() == (OMEGA, ZERO, Fin(1))
        assert answers[ClosedFormWord(Constant(1))].as_tuple() == (Fin(1), ZERO, OMEGA)
        # the probe matching the codeword is the all-correct answer
        assert answers[ClosedFormWord(Constant(0), {3: 1})].as_tuple() == (
            OMEGA, ZERO, ZERO)
        # off by one position: the two incorrect pegs swap into place
        assert answers[ClosedFormWord(Constant(0), {2: 1})].as_tuple() == (
            OMEGA, Fin(2), ZERO)
        assert mastermind_probe_deduce(answers, 6, [0, 1]) == code

    def test_constant_codeword_immediate(self):
        code = ClosedFormWord(Constant(2))
        family = mastermind_probe_family(4, [2])
        answers = {p: mastermind_feedback(code, p) for p in family}
        assert answers[ClosedFormWord(Constant(2))].as_tuple() == (OMEGA, ZERO, ZERO)
        assert mastermind_probe_deduce(answers, 4, [2]) == code

    def test_random_closed_codewords(self):
        rng = Random(9119)
        for _ in range(120):
            ncolors = rng.randint(2, 6)
            window = rng.randint(4, 10)
            base = rng.randrange(ncolors)
            exc = {}
            for p in rng.sample(range(window), rng.randint(0, min(4, window))):
                v = rng.randrange(ncolors)
                if v != base:
                    exc[p] = v
            code = ClosedFormWord(Constant(base), exc)
            colors = list(range(ncolors))
            answers = {p: mastermind_feedback(code, p)
                       for p in mastermind_probe_family(window, colors)}
            assert mastermind_probe_deduce(answers, window, colors) == code

    def test_random_finite_codewords(self):
        rng = Random(515)
        for _ in range(100):
            L = rng.randint(1, 7)
            ncolors = rng.randint(2, 5)
            code = FiniteWord.from_symbols([rng.randrange(ncolors) for _ in range(L)])
            colors = list(range(ncolors))
            answers = {p: mastermind_feedback(code, p)
                       for p in mastermind_probe_family(L, colors, length=L)}
            assert mastermind_probe_deduce(answers, L, colors, length=L) == code

    def test_strategy_claims_at_omega(self):
        code = ClosedFormWord(Constant(2), {0: 1, 5: 0})
        d = CompleteDictionary(Alphabet(3), None)
        history, claim = drive_counts(CountProbeStrategy(8), d, code)
        assert claim.word == code and claim.stage == STAGE_OMEGA
        assert len(history) == 3 + 8 * 3  # constants plus one probe per cell-color

    def test_lying_oracle_rejected(self):
        code = ClosedFormWord(Constant(0), {3: 1})
        family = mastermind_probe_family(6, [0, 1])
        answers = {p: mastermind_feedback(code, p) for p in family}
        # a constant guess with a nonzero rearrangeable count is impossible
        bad = dict(answers)
        bad[ClosedFormWord(Constant(0))] = MastermindFeedback(OMEGA, Fin(1), Fin(1))
        with pytest.raises(OracleInconsistency):
            mastermind_probe_deduce(bad, 6, [0, 1])
        # dropping a probe is reported as missing, not silently guessed
        short = {p: a for p, a in answers.items()
                 if p != ClosedFormWord(Constant(0), {3: 1})}
        with pytest.raises(OracleInconsistency):
            mastermind_probe_deduce(short, 6, [0, 1])
        # claiming two colors sit at one cell is contradictory
        twisted = dict(answers)
        twisted[ClosedFormWord(Constant(1), {3: 0})] = MastermindFeedback(
            Fin(1), ZERO, OMEGA)
        with pytest.raises(OracleInconsistency):
            mastermind_probe_deduce(twisted, 6, [0, 1])

    def test_window_must_cover_finite_board(self):
        code = FiniteWord.from_symbols([0, 1, 0, 0])
        answers = {p: mastermind_feedback(code, p)
                   for p in mastermind_probe_family(4, [0, 1], length=4)}
        with pytest.raises(WindowTruncation):
            mastermind_probe_deduce(answers, 3, [0, 1], length=4)

    def test_mode_guard(self):
        with pytest.raises(StrategyError):
            CountProbeStrategy(4).begin(CompleteDictionary(ABC, None), "wordle")


# ---------------------------------------------------------------------------
# decoders


def make_count_oracle(hidden, log=None):
    def oracle(guess):
        if log is not None:
            log.append(guess)
        return int((guess.symbols == hidden.symbols).sum())
    return oracle


class TestCorrectnessDecoderDup:
    def test_worked_example(self):
        hidden = FiniteWord.from_symbols([2, 0, 1])
        seed = FiniteWord.from_symbols([0, 0, 0])
        log = []
        assert correctness_decoder_dup(make_count_oracle(hidden, log), 3, 3,
                                       seed=seed) == hidden
        # seed count 1; cell 0 resolves on its second variation, cell 1 on a
        # drop, cell 2 on a rise
        assert [list(g.symbols) for g in log] == [
            [0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [0, 0, 1]]

    def test_seed_equal_to_hidden(self):
        hidden = FiniteWord.from_symbols([3, 1, 2])
        log = []
        assert correctness_decoder_dup(make_count_oracle(hidden, log), 3, 4,
                                       seed=hidden) == hidden
        assert len(log) == 1  # the seed query alone

    def test_randomized_within_budget(self):
        rng = Random(60606)
        for _ in range(400):
            L = rng.randint(1, 64)
            m = rng.randint(2, 16)
            hidden = FiniteWord.from_symbols([rng.randrange(m) for _ in range(L)])
            log = []
            got = correctness_decoder_dup(make_count_oracle(hidden, log), L, m)
            assert got == hidden
            assert len(log) <= 1 + L * (m - 1)

    def test_lying_oracle_rejected(self):
        jumps = iter([0, 3])
        with pytest.raises(OracleInconsistency):
            correctness_decoder_dup(lambda g: next(jumps), 3, 3)

    def test_seed_length_guard(self):
        with pytest.raises(ValueError):
            correctness_decoder_dup(lambda g: 0, 4, 2,
                                    seed=FiniteWord.from_symbols([0, 0]))


class TestInjectiveSwapDecoder:
    def test_double_rise_example(self):
        hidden = FiniteWord.from_symbols([1, 0, 2])
        seed = FiniteWord.from_symbols([0, 1, 2])
        log = []
        assert injective_swap_decoder(make_count_oracle(hidden, log), seed) == hidden
        assert len(log) == 3  # count, one +2 swap, final confirmation

    def test_single_rise_disambiguation(self):
        hidden = FiniteWord.from_symbols([1, 2, 0])
        seed = FiniteWord.from_symbols([0, 1, 2])
        log = []
        assert injective_swap_decoder(make_count_oracle(hidden, log), seed) == hidden
        assert len(log) == 5

    def test_seed_equal_to_hidden(self):
        seed = FiniteWord.from_symbols([2, 0, 1])
        log = []
        assert injective_swap_decoder(make_count_oracle(seed, log), seed) == seed
        assert len(log) == 1

    def test_random_permutations_all_queries_injective(self):
        rng = Random(321321)
        for _ in range(400):
            L = rng.randint(1, 32)
            perm = list(range(L))
            rng.shuffle(perm)
            hidden = FiniteWord.from_symbols(perm)
            seed = FiniteWord.from_symbols(list(range(L)))
            log = []
            got = injective_swap_decoder(make_count_oracle(hidden, log), seed)
            assert got == hidden
            assert all(check_injective(q) for q in log)

    def test_wide_color_pools(self):
        rng = Random(808)
        for _ in range(200):
            L = rng.randint(1, 16)
            pool = rng.sample(range(40), rng.randint(L, 24))
            hidden = FiniteWord.from_symbols(rng.sample(pool, L))
            seed = FiniteWord.from_symbols(rng.sample(pool, L))
            log = []
            got = injective_swap_decoder(make_count_oracle(hidden, log), seed,
                                         colors=pool)
            assert got == hidden
            assert all(check_injective(q) for q in log)

    def test_guards(self):
        with pytest.raises(StrategyError):
            injective_swap_decoder(lambda g: 0, FiniteWord.from_symbols([1, 1]))
        with pytest.raises(ValueError):
            injective_swap_decoder(lambda g: 0, FiniteWord.from_symbols([0, 5]),
                                   colors=[0, 1])

    def test_lying_oracle_rejected(self):
        # a transposition can never move the count by three
        answers = iter([0, 0, 0, 3])
        with pytest.raises(OracleInconsistency):
            injective_swap_decoder(lambda g: next(answers),
                                   FiniteWord.from_symbols([0, 1, 2, 3]),
                                   colors=[0, 1, 2, 3, 4])


class TestDecoderStrategies:
    def test_dup_strategy_round_trip(self):
        d = CompleteDictionary(Alphabet(6), 5)
        code = FiniteWord.from_symbols([3, 1, 4, 1, 5])
        history, claim = drive_counts(DecoderStrategy("dup"), d, code)
        assert claim.word == code and claim.stage == STAGE_OMEGA
        assert len(history) <= 1 + 5 * 5

    def test_inj_strategy_round_trip_simplified(self):
        d = CompleteDictionary(Alphabet(5), 5)
        code = FiniteWord.from_symbols([4, 2, 0, 1, 3])
        history, claim = drive_counts(DecoderStrategy("inj"), d, code,
                                      mode="simplified")
        assert claim.word == code and claim.stage == STAGE_OMEGA
        assert all(check_injective(w) for _, w, _ in history)

    def test_replay_is_deterministic(self):
        d = CompleteDictionary(Alphabet(5), 4)
        code = FiniteWord.from_symbols([2, 0, 3, 1])
        h1, c1 = drive_counts(DecoderStrategy("inj"), d, code)
        h2, c2 = drive_counts(DecoderStrategy("inj"), d, code)
        assert [w for _, w, _ in h1] == [w for _, w, _ in h2]
        assert c1.word == c2.word

    def test_guards(self):
        with pytest.raises(ValueError):
            DecoderStrategy("swap")
        with pytest.raises(StrategyError):
            DecoderStrategy("dup").begin(CompleteDictionary(Alphabet(3), 3), "wordle")
        with pytest.raises(StrategyError):
            DecoderStrategy("dup").begin(CompleteDictionary(Alphabet(3), None),
                                         "mastermind")
