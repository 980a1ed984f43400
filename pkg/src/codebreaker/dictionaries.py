"""Word families: membership, deterministic enumeration, and
constraint-directed search.

Four implementations share one interface.  Explicit holds a finite word
list (with a vectorized search path when every member is finite).
Complete is every word of a fixed length over an alphabet, or every
closed-form word when the length is infinite.  Pattern is a finite set
of closed-form templates closed under a bounded menu of exception
edits, which keeps search over infinite words decidable.  Nerdle is the
valid-equation family.

Enumeration order is fixed per implementation (list order, lexicographic,
template-then-edit) so transcripts and fixtures replay byte-identically.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from random import Random
from typing import (Dict, FrozenSet, Iterator, List, Mapping, Optional,
                    Sequence, Set, Tuple)

import numpy as np

from .cardinal import Fin
from . import nerdle as nerdle_mod
from .serialize import word_from_json, word_to_json
from .words import (
    Alphabet, ClosedFormWord, FiniteWord, LengthMismatch, Word, color_census,
    letters,
)

_MATRIX_CELL_CAP = 50_000_000


@dataclass(frozen=True)
class CellConstraint:
    """Per-cell requirements gathered from feedback.

    ``required`` pins a symbol (green); ``forbidden`` lists symbols ruled
    out at a cell (seen non-green there); ``counts`` optionally bounds how
    often a symbol occurs overall (yellow-derived), as inclusive
    (low, high) with high None for unbounded.
    """

    required: Mapping[int, int] = field(default_factory=dict)
    forbidden: Mapping[int, FrozenSet[int]] = field(default_factory=dict)
    counts: Mapping[int, Tuple[int, Optional[int]]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "required", dict(self.required))
        object.__setattr__(self, "forbidden",
                           {p: frozenset(v) for p, v in self.forbidden.items() if v})
        object.__setattr__(self, "counts", dict(self.counts))
        for p, s in self.required.items():
            if p < 0 or s < 0:
                raise ValueError("negative cell or symbol")
            if s in self.forbidden.get(p, ()):
                raise ValueError(f"cell {p}: required symbol is also forbidden")

    def is_trivial(self) -> bool:
        return not (self.required or self.forbidden or self.counts)

    def menu(self, pos: int, alphabet_size: int) -> Tuple[int, ...]:
        """Allowed symbols at a cell, ascending."""
        if pos in self.required:
            return (self.required[pos],)
        bad = self.forbidden.get(pos, frozenset())
        return tuple(s for s in range(alphabet_size) if s not in bad)

    def allows(self, word: Word) -> bool:
        for p, s in self.required.items():
            if word.eval_at(p) != s:
                return False
        for p, bad in self.forbidden.items():
            if word.eval_at(p) in bad:
                return False
        if self.counts:
            census = color_census(word)
            for color, (lo, hi) in self.counts.items():
                n = census.count(color)
                if n < Fin(lo):
                    return False
                if hi is not None and n > Fin(hi):
                    return False
        return True

    def max_cell(self) -> int:
        cells = list(self.required) + list(self.forbidden)
        return max(cells) if cells else -1


class Dictionary:
    """Interface: ``alphabet``, ``length`` (None for infinite words),
    ``contains``, ``word_at`` (fixed enumeration), ``find_consistent``,
    ``size`` (None when not finitely counted), ``describe``."""

    alphabet: Alphabet
    length: Optional[int]

    def contains(self, word: Word) -> bool:
        raise NotImplementedError

    def word_at(self, index: int) -> Word:
        raise NotImplementedError

    def find_consistent(self, constraint: CellConstraint) -> Optional[Word]:
        raise NotImplementedError

    @property
    def size(self) -> Optional[int]:
        return None

    def __iter__(self) -> Iterator[Word]:
        i = 0
        n = self.size
        while n is None or i < n:
            try:
                yield self.word_at(i)
            except IndexError:
                return
            i += 1

    def random_word(self, rng: Random) -> Word:
        n = self.size
        if n is None:
            raise ValueError("no random sampler for this dictionary")
        return self.word_at(rng.randrange(n))

    def describe(self) -> dict:
        raise NotImplementedError

    def _check_word(self, word: Word) -> None:
        if self.length is None:
            if not isinstance(word, ClosedFormWord):
                raise LengthMismatch("this dictionary holds infinite words")
        else:
            if not isinstance(word, FiniteWord) or word.size() != self.length:
                raise LengthMismatch(f"expected a finite word of length {self.length}")


class ExplicitDictionary(Dictionary):
    def __init__(self, alphabet: Alphabet, words: Sequence[Word]):
        if not words:
            raise ValueError("dictionary must be nonempty")
        self.alphabet = alphabet
        self.words = list(words)
        first = self.words[0]
        if isinstance(first, FiniteWord):
            self.length: Optional[int] = first.size()
            if any(not isinstance(w, FiniteWord) or w.size() != self.length
                   for w in self.words):
                raise LengthMismatch("explicit members must share one length class")
        else:
            self.length = None
            if any(not isinstance(w, ClosedFormWord) for w in self.words):
                raise LengthMismatch("explicit members must share one length class")
        self._matrix: Optional[np.ndarray] = None
        if (self.length is not None
                and len(self.words) * self.length <= _MATRIX_CELL_CAP):
            self._matrix = np.stack([w.symbols for w in self.words])

    def contains(self, word: Word) -> bool:
        self._check_word(word)
        return any(word == w for w in self.words)

    def word_at(self, index: int) -> Word:
        if not 0 <= index < len(self.words):
            raise IndexError(index)
        return self.words[index]

    @property
    def size(self) -> int:
        return len(self.words)

    def find_consistent(self, constraint: CellConstraint) -> Optional[Word]:
        if self._matrix is not None:
            mask = np.ones(len(self.words), dtype=bool)
            for p, s in constraint.required.items():
                if p >= self.length:
                    return None
                mask &= self._matrix[:, p] == s
            for p, bad in constraint.forbidden.items():
                if p < self.length:
                    mask &= ~np.isin(self._matrix[:, p], list(bad))
            for i in np.flatnonzero(mask):
                if not constraint.counts or constraint.allows(self.words[i]):
                    return self.words[int(i)]
            return None
        for w in self.words:
            if constraint.allows(w):
                return w
        return None

    def describe(self) -> dict:
        return {"kind": "explicit",
                "alphabet": _alphabet_json(self.alphabet),
                "words": [word_to_json(w) for w in self.words]}


class CompleteDictionary(Dictionary):
    """All words of a fixed finite length, or all closed-form words when
    ``length`` is None."""

    def __init__(self, alphabet: Alphabet, length: Optional[int]):
        if length is not None:
            if length < 1:
                raise ValueError("length must be positive")
            if alphabet.size is None:
                raise ValueError("finite complete dictionaries need a finite alphabet")
        self.alphabet = alphabet
        self.length = length

    def contains(self, word: Word) -> bool:
        self._check_word(word)
        if isinstance(word, FiniteWord):
            return bool(np.all(word.symbols >= 0)) and (
                self.alphabet.size is None
                or bool(np.all(word.symbols < self.alphabet.size)))
        if self.alphabet.size is None:
            return True
        top = _max_symbol(word)
        return top is not None and top < self.alphabet.size

    def word_at(self, index: int) -> Word:
        if self.length is None:
            raise ValueError("complete infinite dictionaries are not countable")
        k = self.alphabet.size
        if not 0 <= index < k ** self.length:
            raise IndexError(index)
        digits = []
        x = index
        for _ in range(self.length):
            x, r = divmod(x, k)
            digits.append(r)
        return FiniteWord.from_symbols(list(reversed(digits)))

    @property
    def size(self) -> Optional[int]:
        if self.length is None:
            return None
        return self.alphabet.size ** self.length

    def random_word(self, rng: Random) -> Word:
        if self.length is None:
            raise ValueError("no random sampler for infinite complete dictionaries")
        return FiniteWord.from_symbols(
            [rng.randrange(self.alphabet.size) for _ in range(self.length)])

    def find_consistent(self, constraint: CellConstraint) -> Optional[Word]:
        if self.length is None:
            return self._find_closed(constraint)
        if constraint.max_cell() >= self.length:
            return None
        k = self.alphabet.size
        if not constraint.counts:
            # least completion: 0 everywhere, bumped where constrained
            symbols = np.zeros(self.length, dtype=np.int64)
            for p, bad in constraint.forbidden.items():
                m = constraint.menu(p, k)
                if not m:
                    return None
                symbols[p] = m[0]
            for p, s in constraint.required.items():
                symbols[p] = s
            return FiniteWord.from_symbols(symbols)
        return self._find_with_counts(constraint)

    def _find_with_counts(self, constraint: CellConstraint) -> Optional[Word]:
        # small-length backtracking; count bounds make cells interact
        k = self.alphabet.size
        menus = [constraint.menu(p, k) for p in range(self.length)]
        if any(not m for m in menus):
            return None
        used = [0] * k
        out = [0] * self.length

        def lo_deficit() -> int:
            return sum(max(lo - used[c], 0)
                       for c, (lo, _) in constraint.counts.items() if c < k)

        def walk(p: int) -> bool:
            if self.length - p < lo_deficit():
                return False
            if p == self.length:
                return True
            for s in menus[p]:
                hi = constraint.counts.get(s, (0, None))[1]
                if hi is not None and used[s] + 1 > hi:
                    continue
                used[s] += 1
                out[p] = s
                if walk(p + 1):
                    return True
                used[s] -= 1
            return False

        return FiniteWord.from_symbols(out) if walk(0) else None

    def _find_closed(self, constraint: CellConstraint) -> Optional[ClosedFormWord]:
        if constraint.counts:
            raise ValueError("count bounds are not supported over infinite words")
        from .words import Constant
        exceptions = {}
        for p, s in constraint.required.items():
            if s != 0:
                exceptions[p] = s
        for p, bad in constraint.forbidden.items():
            if p in constraint.required or 0 not in bad:
                continue
            limit = self.alphabet.size if self.alphabet.size is not None else max(bad) + 2
            choice = next((v for v in range(limit) if v not in bad), None)
            if choice is None:
                return None
            exceptions[p] = choice
        return ClosedFormWord(Constant(0), exceptions)

    def describe(self) -> dict:
        return {"kind": "complete",
                "alphabet": _alphabet_json(self.alphabet),
                "length": self.length}


def _max_symbol(word: ClosedFormWord) -> Optional[int]:
    """Largest symbol a closed word uses, None when unbounded (shift base)."""
    from .words import Constant, Periodic
    values = list(word.exceptions.values())
    if isinstance(word.base, Constant):
        values.append(word.base.color)
    elif isinstance(word.base, Periodic):
        values.extend(word.base.pattern)
    else:
        return None
    return max(values)


class PatternDictionary(Dictionary):
    """Closed-form templates plus up to ``max_edits`` exception edits at
    listed positions with listed replacement symbols."""

    def __init__(self, alphabet: Alphabet, templates: Sequence[ClosedFormWord],
                 edit_positions: Sequence[int] = (), edit_symbols: Sequence[int] = (),
                 max_edits: int = 0):
        if not templates:
            raise ValueError("dictionary must be nonempty")
        if max_edits < 0:
            raise ValueError("max_edits must be nonnegative")
        self.alphabet = alphabet
        self.length = None
        self.templates = list(templates)
        self.edit_positions = tuple(sorted(set(edit_positions)))
        self.edit_symbols = tuple(sorted(set(edit_symbols)))
        self.max_edits = max_edits
        self._all: Optional[List[ClosedFormWord]] = None

    def _edits_against(self, word: ClosedFormWord,
                       template: ClosedFormWord) -> Optional[Dict[int, int]]:
        if word.base != template.base:
            return None
        cells = set(word.exceptions) | set(template.exceptions)
        return {p: word.eval_at(p) for p in cells
                if word.eval_at(p) != template.eval_at(p)}

    def contains(self, word: Word) -> bool:
        self._check_word(word)
        for t in self.templates:
            edits = self._edits_against(word, t)
            if edits is None:
                continue
            if (len(edits) <= self.max_edits
                    and all(p in self.edit_positions for p in edits)
                    and all(v in self.edit_symbols for v in edits.values())):
                return True
        return False

    def _enumerate_all(self) -> List[ClosedFormWord]:
        if self._all is None:
            seen: Set[ClosedFormWord] = set()
            ordered: List[ClosedFormWord] = []
            for w in self._raw_enumeration():
                if w not in seen:
                    seen.add(w)
                    ordered.append(w)
            self._all = ordered
        return self._all

    def _raw_enumeration(self) -> Iterator[ClosedFormWord]:
        # template-then-edit order: per template, edit count ascending,
        # then lexicographic on the sorted (position, symbol) tuples
        for t in self.templates:
            for count in range(self.max_edits + 1):
                for cells in itertools.combinations(self.edit_positions, count):
                    for vals in itertools.product(self.edit_symbols, repeat=count):
                        w = t
                        ok = True
                        for p, v in zip(cells, vals):
                            if t.eval_at(p) == v:
                                ok = False
                                break
                            w = w.with_exception(p, v)
                        if ok:
                            yield w

    def word_at(self, index: int) -> ClosedFormWord:
        words = self._enumerate_all()
        if not 0 <= index < len(words):
            raise IndexError(index)
        return words[index]

    @property
    def size(self) -> int:
        return len(self._enumerate_all())

    def random_word(self, rng: Random) -> ClosedFormWord:
        return self.word_at(rng.randrange(self.size))

    def find_consistent(self, constraint: CellConstraint) -> Optional[ClosedFormWord]:
        if constraint.counts:
            for w in self._enumerate_all():
                if constraint.allows(w):
                    return w
            return None
        for t in self.templates:
            w = self._solve_template(t, constraint)
            if w is not None:
                return w
        return None

    def _solve_template(self, t: ClosedFormWord,
                        constraint: CellConstraint) -> Optional[ClosedFormWord]:
        edits: Dict[int, int] = {}
        for p, s in constraint.required.items():
            if t.eval_at(p) == s:
                continue
            if p not in self.edit_positions or s not in self.edit_symbols:
                return None
            edits[p] = s
        for p, bad in constraint.forbidden.items():
            current = edits.get(p, t.eval_at(p))
            if current not in bad:
                continue
            if p in constraint.required or p not in self.edit_positions:
                return None
            choice = next((v for v in self.edit_symbols
                           if v not in bad and v != t.eval_at(p)), None)
            if choice is None:
                return None
            edits[p] = choice
        if len(edits) > self.max_edits:
            return None
        w = t
        for p, v in sorted(edits.items()):
            w = w.with_exception(p, v)
        return w

    def describe(self) -> dict:
        return {"kind": "pattern",
                "alphabet": _alphabet_json(self.alphabet),
                "templates": [word_to_json(t) for t in self.templates],
                "editPositions": list(self.edit_positions),
                "editSymbols": list(self.edit_symbols),
                "maxEdits": self.max_edits}


class NerdleDictionary(Dictionary):
    """Valid equations of a fixed length over the fifteen-symbol alphabet."""

    def __init__(self, length: int):
        self.alphabet = nerdle_mod.NERDLE_ALPHABET
        self.length = length
        self._all: Optional[List[Tuple[int, ...]]] = None
        self._matrix: Optional[np.ndarray] = None
        self._stream_cache: List[Tuple[int, ...]] = []
        self._stream: Optional[Iterator[Tuple[int, ...]]] = None
        self._stream_done = False
        if length <= nerdle_mod.GENERATION_CAP:
            self._all = nerdle_mod.all_equations(length)
            if not self._all:
                raise ValueError(f"no valid equations of length {length}")
            self._matrix = np.array(self._all, dtype=np.int8)

    def contains(self, word: Word) -> bool:
        self._check_word(word)
        return nerdle_mod.is_valid_equation(word.symbols)

    def equations(self) -> List[Tuple[int, ...]]:
        if self._all is None:
            raise ValueError("equation family too large to materialize")
        return self._all

    def word_at(self, index: int) -> FiniteWord:
        if self._all is not None:
            if not 0 <= index < len(self._all):
                raise IndexError(index)
            return FiniteWord.from_symbols(self._all[index])
        while len(self._stream_cache) <= index and not self._stream_done:
            if self._stream is None:
                self._stream = nerdle_mod.iter_equations(self.length)
            nxt = next(self._stream, None)
            if nxt is None:
                self._stream_done = True
            else:
                self._stream_cache.append(nxt)
        if index >= len(self._stream_cache):
            raise IndexError(index)
        return FiniteWord.from_symbols(self._stream_cache[index])

    @property
    def size(self) -> Optional[int]:
        return len(self._all) if self._all is not None else None

    def random_word(self, rng: Random) -> FiniteWord:
        if self._all is not None:
            return FiniteWord.from_symbols(self._all[rng.randrange(len(self._all))])
        return nerdle_mod.random_equation(self.length, rng)

    def find_consistent(self, constraint: CellConstraint) -> Optional[FiniteWord]:
        if constraint.max_cell() >= self.length:
            return None
        menus = [constraint.menu(p, 15) for p in range(self.length)]
        if any(not m for m in menus):
            return None
        if self._matrix is not None:
            # materialized class: vectorized scan keeps the true least
            mask = np.ones(len(self._matrix), dtype=bool)
            for p, s in constraint.required.items():
                mask &= self._matrix[:, p] == s
            for p, bad in constraint.forbidden.items():
                if bad:
                    mask &= ~np.isin(self._matrix[:, p], list(bad))
            for row in np.flatnonzero(mask):
                w = FiniteWord.from_symbols(self._all[row])
                if not constraint.counts or constraint.allows(w):
                    return w
            return None
        # long classes: shape-directed construction first (deterministic,
        # not the least), exhaustive lexicographic stream as a fallback
        if not constraint.counts:
            toks = nerdle_mod.solve_consistent(self.length, menus)
            if toks is not None:
                return FiniteWord.from_symbols(toks)
        for toks in nerdle_mod.iter_equations(self.length, menus):
            w = FiniteWord.from_symbols(toks)
            if not constraint.counts or constraint.allows(w):
                return w
        return None

    def describe(self) -> dict:
        return {"kind": "nerdle", "length": self.length}


# ---------------------------------------------------------------------------
# configuration plumbing


def _alphabet_json(a: Alphabet) -> dict:
    return {"size": a.size, "labels": a.labels}


def _alphabet_from_json(data) -> Alphabet:
    if isinstance(data, str):
        return letters(data)
    return Alphabet(data.get("size"), data.get("labels"))


def dictionary_from_config(cfg: dict) -> Dictionary:
    kind = cfg["kind"]
    if kind == "explicit":
        alphabet = _alphabet_from_json(cfg["alphabet"])
        words = [word_from_json(w) for w in cfg["words"]]
        return ExplicitDictionary(alphabet, words)
    if kind == "complete":
        return CompleteDictionary(_alphabet_from_json(cfg["alphabet"]),
                                  cfg.get("length"))
    if kind == "pattern":
        return PatternDictionary(
            _alphabet_from_json(cfg["alphabet"]),
            [word_from_json(t) for t in cfg["templates"]],
            cfg.get("editPositions", ()), cfg.get("editSymbols", ()),
            cfg.get("maxEdits", 0))
    if kind == "nerdle":
        return NerdleDictionary(cfg["length"])
    raise ValueError(f"unknown dictionary kind {kind!r}")


def parse_dictionary_spec(spec: str) -> Dictionary:
    """CLI shorthand: ``complete:<labels>:<len>``, ``nerdle:<len>``, or a
    JSON config file path."""
    if spec.startswith("complete:"):
        _, labels, ln = spec.split(":")
        return CompleteDictionary(letters(labels), int(ln))
    if spec.startswith("nerdle:"):
        return NerdleDictionary(int(spec.split(":")[1]))
    with open(spec, "r", encoding="utf-8") as fh:
        return dictionary_from_config(json.load(fh))
