"""Word representations: finite (dense or run-length), closed-form infinite,
and lazily generated infinite words.

A closed-form word is a base rule plus finitely many exceptions:

  * ``Constant(c)``          every position holds color c
  * ``Shift(k)``             position p holds color p + k (injective base)
  * ``Periodic(pattern)``    position p holds pattern[p % len(pattern)]

Exceptions map positions to colors and must differ from the base value
there, so structural equality is semantic equality (periodic patterns are
reduced to their least period, and a one-color pattern collapses to a
constant).

Symbols and colors are nonnegative integers throughout; human-readable
letters live in :class:`Alphabet` label maps.

The census operations answer, exactly and without sampling, "how often
does each color occur" and "where do two words agree", with counts in
``Cardinal`` and agreement sets as :class:`PositionSet` descriptors.
"""

from __future__ import annotations

import hashlib
from bisect import bisect_right
from dataclasses import dataclass
from math import lcm
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cardinal import Cardinal, Fin, OMEGA, ZERO
from .positions import PositionSet

RLE_THRESHOLD = 4096  # finite words longer than this default to run-length storage


class LengthMismatch(ValueError):
    """Feedback and agreement require words of the same length class."""


# ---------------------------------------------------------------------------
# alphabets


@dataclass(frozen=True)
class Alphabet:
    """Symbol universe. ``size`` of None means countably infinite.

    ``labels`` optionally names the first symbols (single characters) so
    words can be parsed from and rendered as text.
    """

    size: Optional[int]
    labels: Optional[str] = None

    def __post_init__(self) -> None:
        if self.size is not None and self.size < 1:
            raise ValueError("alphabet must have at least one symbol")
        if self.labels is not None:
            if len(set(self.labels)) != len(self.labels):
                raise ValueError("duplicate labels")
            if self.size is not None and len(self.labels) != self.size:
                raise ValueError("label count must match size")

    def __contains__(self, symbol: int) -> bool:
        return symbol >= 0 and (self.size is None or symbol < self.size)

    def label(self, symbol: int) -> str:
        if self.labels is not None and symbol < len(self.labels):
            return self.labels[symbol]
        return f"<{symbol}>"

    def parse(self, text: str) -> "FiniteWord":
        if self.labels is None:
            raise ValueError("alphabet has no labels to parse with")
        index = {ch: i for i, ch in enumerate(self.labels)}
        try:
            return FiniteWord.from_symbols([index[ch] for ch in text])
        except KeyError as exc:
            raise ValueError(f"symbol {exc.args[0]!r} not in alphabet") from None

    def render(self, word: "FiniteWord") -> str:
        return "".join(self.label(int(s)) for s in word.symbols)


def letters(chars: str) -> Alphabet:
    return Alphabet(len(chars), chars)


# ---------------------------------------------------------------------------
# color census


@dataclass(frozen=True)
class ColorCensus:
    """Exact per-color occurrence counts.

    ``explicit`` pins down finitely many interesting colors; every other
    color falls under ``tail``:

      * ``("absent",)``        count 0
      * ("each_once", j)       count 1 for colors >= j, else 0
      * ("periodic", pattern)  count omega for pattern colors, else 0
    """

    explicit: Dict[int, Cardinal]
    tail: Tuple

    def count(self, color: int) -> Cardinal:
        if color in self.explicit:
            return self.explicit[color]
        kind = self.tail[0]
        if kind == "absent":
            return ZERO
        if kind == "each_once":
            return Fin(1) if color >= self.tail[1] else ZERO
        if kind == "periodic":
            return OMEGA if color in self.tail[1] else ZERO
        raise AssertionError(self.tail)

    def omega_colors(self) -> FrozenSet[int]:
        """Colors occurring infinitely often (explicit part plus tail)."""
        out = {c for c, n in self.explicit.items() if n.is_omega}
        if self.tail[0] == "periodic":
            out |= {c for c in self.tail[1] if c not in self.explicit}
        return frozenset(out)

    def present_colors_bounded(self) -> Optional[FrozenSet[int]]:
        """All colors with nonzero count, when that set is finite."""
        if self.tail[0] == "each_once":
            return None
        base = set() if self.tail[0] == "absent" else set(self.tail[1])
        base -= set(self.explicit)
        base |= {c for c, n in self.explicit.items() if n}
        return frozenset(base)


# ---------------------------------------------------------------------------
# bases


@dataclass(frozen=True)
class Constant:
    color: int

    def __post_init__(self) -> None:
        if self.color < 0:
            raise ValueError("colors are nonnegative")

    def value_at(self, p: int) -> int:
        return self.color


@dataclass(frozen=True)
class Shift:
    offset: int

    def __post_init__(self) -> None:
        if self.offset < 0:
            raise ValueError("shift offset is nonnegative")

    def value_at(self, p: int) -> int:
        return p + self.offset


@dataclass(frozen=True)
class Periodic:
    pattern: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.pattern:
            raise ValueError("pattern must be nonempty")
        if any(c < 0 for c in self.pattern):
            raise ValueError("colors are nonnegative")

    def value_at(self, p: int) -> int:
        return self.pattern[p % len(self.pattern)]


Base = Union[Constant, Shift, Periodic]


def _least_period(pattern: Sequence[int]) -> Tuple[int, ...]:
    pattern = tuple(pattern)
    n = len(pattern)
    for d in range(1, n + 1):
        if n % d == 0 and pattern == pattern[:d] * (n // d):
            return pattern[:d]
    return pattern


# ---------------------------------------------------------------------------
# words


class Word:
    """Common interface: ``eval_at``, ``length``, ``prefix``."""

    def eval_at(self, p: int) -> int:
        raise NotImplementedError

    @property
    def length(self) -> Cardinal:
        raise NotImplementedError

    def prefix(self, n: int) -> "FiniteWord":
        return FiniteWord.from_symbols([self.eval_at(p) for p in range(n)])


class FiniteWord(Word):
    """Immutable finite word; dense numpy vector or run-length encoded.

    Both storages denote the same word and compare equal; long words built
    from runs stay run-length encoded until something needs the dense form.
    """

    __slots__ = ("_dense", "_runs", "_cum", "_len", "_hash")

    def __init__(self) -> None:
        raise TypeError("use FiniteWord.from_symbols or from_runs")

    @classmethod
    def _make(cls, dense, runs, length) -> "FiniteWord":
        self = object.__new__(cls)
        self._dense = dense
        self._runs = runs
        self._cum = None
        self._len = length
        self._hash = None
        return self

    @staticmethod
    def from_symbols(symbols: Sequence[int]) -> "FiniteWord":
        arr = np.asarray(symbols, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("symbols must be one-dimensional")
        if arr.size and arr.min() < 0:
            raise ValueError("symbols are nonnegative")
        word = FiniteWord._make(arr, None, int(arr.size))
        if arr.size > RLE_THRESHOLD:
            # only precompute runs when they actually compress; the runs
            # property still encodes high-entropy words on demand
            runs = int((arr[1:] != arr[:-1]).sum()) + 1
            if runs * 4 <= arr.size:
                word._runs = _encode_runs(arr)
        return word

    @staticmethod
    def from_runs(runs: Sequence[Tuple[int, int]]) -> "FiniteWord":
        cleaned: List[Tuple[int, int]] = []
        total = 0
        for sym, count in runs:
            if count < 0 or sym < 0:
                raise ValueError("bad run")
            if count == 0:
                continue
            if cleaned and cleaned[-1][0] == sym:
                cleaned[-1] = (sym, cleaned[-1][1] + count)
            else:
                cleaned.append((sym, count))
            total += count
        word = FiniteWord._make(None, cleaned, total)
        if total <= RLE_THRESHOLD:
            word._dense = _decode_runs(cleaned, total)
        return word

    # -- storage ------------------------------------------------------

    @property
    def symbols(self) -> np.ndarray:
        if self._dense is None:
            self._dense = _decode_runs(self._runs, self._len)
        return self._dense

    @property
    def runs(self) -> List[Tuple[int, int]]:
        if self._runs is None:
            self._runs = _encode_runs(self._dense)
        return self._runs

    # -- word interface -------------------------------------------------

    def eval_at(self, p: int) -> int:
        if not (0 <= p < self._len):
            raise IndexError(f"position {p} outside word of length {self._len}")
        if self._dense is not None:
            return int(self._dense[p])
        if self._cum is None:
            cum = []
            acc = 0
            for _, count in self._runs:
                acc += count
                cum.append(acc)
            self._cum = cum
        return self._runs[bisect_right(self._cum, p)][0]

    @property
    def length(self) -> Cardinal:
        return Fin(self._len)

    def size(self) -> int:
        return self._len

    def prefix(self, n: int) -> "FiniteWord":
        if n > self._len:
            raise ValueError("prefix longer than word")
        if self._dense is not None:
            return FiniteWord.from_symbols(self._dense[:n])
        out = []
        left = n
        for sym, count in self._runs:
            take = min(left, count)
            out.append((sym, take))
            left -= take
            if not left:
                break
        return FiniteWord.from_runs(out)

    def replace(self, p: int, symbol: int) -> "FiniteWord":
        arr = self.symbols.copy()
        arr[p] = symbol
        return FiniteWord.from_symbols(arr)

    def swap(self, p: int, q: int) -> "FiniteWord":
        arr = self.symbols.copy()
        arr[p], arr[q] = arr[q], arr[p]
        return FiniteWord.from_symbols(arr)

    def __iter__(self):
        return iter(int(s) for s in self.symbols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteWord):
            return NotImplemented
        if self._len != other._len:
            return False
        if self._dense is None and other._dense is None:
            return self.runs == other.runs
        return bool(np.array_equal(self.symbols, other.symbols))

    def __hash__(self) -> int:
        if self._hash is None:
            digest = hashlib.blake2b(digest_size=8)
            for sym, count in self.runs:
                digest.update(f"{sym}:{count};".encode())
            self._hash = int.from_bytes(digest.digest(), "big") ^ self._len
        return self._hash

    def __repr__(self) -> str:
        if self._len <= 32:
            return f"FiniteWord({list(self.symbols)})"
        return f"FiniteWord(len={self._len})"


def _encode_runs(arr: np.ndarray) -> List[Tuple[int, int]]:
    if arr.size == 0:
        return []
    change = np.flatnonzero(arr[1:] != arr[:-1]) + 1
    starts = np.concatenate(([0], change))
    ends = np.concatenate((change, [arr.size]))
    return [(int(arr[s]), int(e - s)) for s, e in zip(starts, ends)]


def _decode_runs(runs: List[Tuple[int, int]], total: int) -> np.ndarray:
    out = np.empty(total, dtype=np.int64)
    pos = 0
    for sym, count in runs:
        out[pos:pos + count] = sym
        pos += count
    return out


class ClosedFormWord(Word):
    """Infinite word: base rule plus finitely many exceptions."""

    __slots__ = ("base", "exceptions")

    def __init__(self, base: Base, exceptions: Optional[Dict[int, int]] = None):
        if isinstance(base, Periodic):
            pattern = _least_period(base.pattern)
            base = Constant(pattern[0]) if len(pattern) == 1 else Periodic(pattern)
        exc = dict(exceptions or {})
        for p, v in exc.items():
            if p < 0 or v < 0:
                raise ValueError("positions and colors are nonnegative")
            if base.value_at(p) == v:
                raise ValueError(f"exception at {p} equals the base value {v}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "exceptions", dict(sorted(exc.items())))

    def __setattr__(self, *args) -> None:
        raise AttributeError("ClosedFormWord is immutable")

    def eval_at(self, p: int) -> int:
        if p < 0:
            raise IndexError("positions are nonnegative")
        if p in self.exceptions:
            return self.exceptions[p]
        return self.base.value_at(p)

    @property
    def length(self) -> Cardinal:
        return OMEGA

    def with_exception(self, p: int, v: int) -> "ClosedFormWord":
        exc = dict(self.exceptions)
        if self.base.value_at(p) == v:
            exc.pop(p, None)
        else:
            exc[p] = v
        return ClosedFormWord(self.base, exc)

    def positions_of(self, color: int) -> PositionSet:
        """Exactly where ``color`` occurs."""
        base = self.base
        if isinstance(base, Constant):
            core = PositionSet.everything() if base.color == color else PositionSet.empty()
        elif isinstance(base, Shift):
            if color >= base.offset:
                core = PositionSet.finite([color - base.offset])
            else:
                core = PositionSet.empty()
        else:
            m = len(base.pattern)
            core = PositionSet.periodic(m, [r for r in range(m) if base.pattern[r] == color])
        force_out = {p for p, v in self.exceptions.items() if p in core and v != color}
        force_in = {p for p, v in self.exceptions.items() if v == color and p not in core}
        return core.with_edits(force_in, force_out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClosedFormWord):
            return NotImplemented
        return self.base == other.base and self.exceptions == other.exceptions

    def __hash__(self) -> int:
        return hash((self.base, tuple(self.exceptions.items())))

    def __repr__(self) -> str:
        return f"ClosedFormWord({self.base!r}, {self.exceptions!r})"


class LazyWord(Word):
    """Infinite word produced on demand by a generator function.

    ``certificate`` records promised properties (free-form, machine
    checkable by whoever issued the word); values are cached so the word
    is stable and append-only.
    """

    def __init__(self, generate: Callable[[int], int], certificate: Optional[dict] = None):
        self._generate = generate
        self._cache: List[int] = []
        self.certificate = dict(certificate or {})

    def eval_at(self, p: int) -> int:
        if p < 0:
            raise IndexError("positions are nonnegative")
        while len(self._cache) <= p:
            v = int(self._generate(len(self._cache)))
            if v < 0:
                raise ValueError("generator produced a negative color")
            self._cache.append(v)
        return self._cache[p]

    @property
    def length(self) -> Cardinal:
        return OMEGA


# ---------------------------------------------------------------------------
# census operations


def color_census(word: Word) -> ColorCensus:
    """Exact occurrence count for every color of the word."""
    if isinstance(word, FiniteWord):
        explicit: Dict[int, Cardinal] = {}
        if word.size():
            values, counts = np.unique(word.symbols, return_counts=True)
            explicit = {int(v): Fin(int(c)) for v, c in zip(values, counts)}
        return ColorCensus(explicit, ("absent",))
    if isinstance(word, LazyWord):
        raise TypeError("census of a lazy word is not decidable")
    if not isinstance(word, ClosedFormWord):
        raise TypeError(f"not a word: {word!r}")

    base, exc = word.base, word.exceptions
    if isinstance(base, Constant):
        explicit = {base.color: OMEGA}
        for v in exc.values():
            if v != base.color:
                explicit[v] = explicit.get(v, ZERO) + Fin(1)
        return ColorCensus(explicit, ("absent",))

    if isinstance(base, Periodic):
        pattern_colors = frozenset(base.pattern)
        explicit = {}
        touched = set(exc.values()) | {base.value_at(p) for p in exc}
        for c in touched:
            if c in pattern_colors:
                explicit[c] = OMEGA
            else:
                explicit[c] = Fin(sum(1 for v in exc.values() if v == c))
        return ColorCensus(explicit, ("periodic", pattern_colors))

    # Shift(k): untouched colors >= k occur exactly once, below k never.
    k = base.offset
    touched = set(exc.values()) | {p + k for p in exc}
    bound = max([k] + [c + 1 for c in touched])
    explicit = {}
    for c in range(bound):
        n = 0
        if c >= k and (c - k) not in exc:
            n += 1
        n += sum(1 for v in exc.values() if v == c)
        if n or c in touched:
            explicit[c] = Fin(n)
    return ColorCensus(explicit, ("each_once", bound))


def check_injective(word: Word) -> bool:
    """Does every color occur at most once?"""
    if isinstance(word, FiniteWord):
        return len(np.unique(word.symbols)) == word.size()
    if not isinstance(word, ClosedFormWord):
        raise TypeError("injectivity is decidable for finite and closed-form words")
    base, exc = word.base, word.exceptions
    if isinstance(base, (Constant, Periodic)):
        return False
    k = base.offset
    values = list(exc.values())
    if len(set(values)) != len(values):
        return False
    for v in values:
        if v >= k and (v - k) not in exc:
            return False  # v already occurs at its base position
    return True


def agreement_set(w: Word, s: Word) -> PositionSet:
    """Exact set of positions where two closed-form words agree."""
    if not isinstance(w, ClosedFormWord) or not isinstance(s, ClosedFormWord):
        raise TypeError("agreement sets are for closed-form pairs")
    core = _base_agreement(w.base, s.base)
    fixup = set(w.exceptions) | set(s.exceptions)
    force_in = {p for p in fixup if w.eval_at(p) == s.eval_at(p)}
    force_out = fixup - force_in
    return core.with_edits(force_in, force_out)


_BASE_RANK = {Constant: 0, Periodic: 1, Shift: 2}


def _base_agreement(a: Base, b: Base) -> PositionSet:
    if _BASE_RANK[type(a)] > _BASE_RANK[type(b)]:
        a, b = b, a
    if isinstance(a, Constant) and isinstance(b, Constant):
        return PositionSet.everything() if a.color == b.color else PositionSet.empty()
    if isinstance(a, Constant) and isinstance(b, Shift):
        p = a.color - b.offset
        return PositionSet.finite([p]) if p >= 0 else PositionSet.empty()
    if isinstance(a, Constant) and isinstance(b, Periodic):
        m = len(b.pattern)
        return PositionSet.periodic(m, [r for r in range(m) if b.pattern[r] == a.color])
    if isinstance(a, Shift) and isinstance(b, Shift):
        return PositionSet.everything() if a.offset == b.offset else PositionSet.empty()
    if isinstance(a, Periodic) and isinstance(b, Shift):
        top = max(a.pattern)
        hits = [p for p in range(max(top - b.offset + 1, 0))
                if a.value_at(p) == b.value_at(p)]
        return PositionSet.finite(hits)
    if isinstance(a, Periodic) and isinstance(b, Periodic):
        m = lcm(len(a.pattern), len(b.pattern))
        return PositionSet.periodic(m, [r for r in range(m) if a.value_at(r) == b.value_at(r)])
    raise AssertionError((a, b))


@dataclass(frozen=True)
class AgreementCensus:
    """How much two words agree: cardinals both ways plus explicit sets
    for whichever sides are finite (None marks an infinite side)."""

    agree: Cardinal
    disagree: Cardinal
    agree_positions: Optional[FrozenSet[int]]
    disagree_positions: Optional[FrozenSet[int]]


def agreement_census(w: Word, s: Word) -> AgreementCensus:
    if isinstance(w, FiniteWord) and isinstance(s, FiniteWord):
        if w.size() != s.size():
            raise LengthMismatch(f"lengths {w.size()} and {s.size()} differ")
        eq = w.symbols == s.symbols
        agree = np.flatnonzero(eq)
        disagree = np.flatnonzero(~eq)
        return AgreementCensus(Fin(len(agree)), Fin(len(disagree)),
                               frozenset(int(p) for p in agree),
                               frozenset(int(p) for p in disagree))
    if isinstance(w, ClosedFormWord) and isinstance(s, ClosedFormWord):
        pos = agreement_set(w, s)
        neg = pos.complement()
        return AgreementCensus(
            pos.cardinality(), neg.cardinality(),
            pos.finite_positions() if not pos.is_infinite else None,
            neg.finite_positions() if not neg.is_infinite else None,
        )
    raise LengthMismatch("cannot mix finite and infinite words")


def count_color_on(word: ClosedFormWord, color: int, region: PositionSet) -> Cardinal:
    """How often ``color`` occurs within ``region``."""
    return word.positions_of(color).intersect(region).cardinality()


def truncation_bound(*ws: Word) -> int:
    """A prefix length that certifies finite counts for these words.

    Finite components of census and feedback are exact when computed on
    this prefix, and genuinely infinite counts keep growing strictly
    between the bound and twice the bound.
    """
    top_exc = 0
    period = 1
    shifts = 0
    for w in ws:
        if isinstance(w, ClosedFormWord):
            if w.exceptions:
                top_exc = max(top_exc, max(w.exceptions))
                top_exc = max(top_exc, max(w.exceptions.values()))
            if isinstance(w.base, Periodic):
                period = lcm(period, len(w.base.pattern))
                top_exc = max(top_exc, max(w.base.pattern))
            if isinstance(w.base, Shift):
                shifts += w.base.offset
            if isinstance(w.base, Constant):
                top_exc = max(top_exc, w.base.color)
        elif isinstance(w, FiniteWord):
            top_exc = max(top_exc, w.size())
    return 4 * (top_exc + period + shifts + 16)
