"""Arithmetic-equation words over the fifteen-symbol alphabet.

Symbols 0-9 are digits; then, in lexicographic order, + - * / =.
A valid equation has exactly one '=', both sides parse as binary infix
arithmetic (*,/ bind tighter than +,-; all left-associative), numerals
carry no leading zeros ("0" itself is fine), division is exact rational
and never by zero, and the two sides are equal.

Three engines, one grammar:

  * a validator for membership tests,
  * a value-join generator that materializes every equation of a small
    fixed length (sides are grouped by exact value and cross-joined),
  * a lexicographic depth-first search that streams equations of any
    length, optionally restricted to per-cell symbol menus; this is what
    constraint-directed dictionary search runs on.
"""

from __future__ import annotations

import math

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, islice, product
from random import Random
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .words import Alphabet, FiniteWord, letters

PLUS, MINUS, TIMES, DIVIDE, EQUALS = 10, 11, 12, 13, 14
OPS = (PLUS, MINUS, TIMES, DIVIDE)
NERDLE_LABELS = "0123456789+-*/="
NERDLE_ALPHABET = letters(NERDLE_LABELS)


class EquationError(ValueError):
    """Rejection with one of the canonical reasons."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class Equation:
    symbols: Tuple[int, ...]
    value: Fraction

    def text(self) -> str:
        return "".join(NERDLE_LABELS[s] for s in self.symbols)

    def as_word(self) -> FiniteWord:
        return FiniteWord.from_symbols(self.symbols)


def parse_text(text: str) -> List[int]:
    index = {ch: i for i, ch in enumerate(NERDLE_LABELS)}
    try:
        return [index[ch] for ch in text]
    except KeyError as bad:
        raise EquationError("malformed syntax") from bad


def _evaluate_side(syms: Sequence[int], start: int, end: int):
    """Exact value of syms[start:end] as an expression; raises EquationError."""
    acc: Fraction | int = 0
    last = None
    pending = None
    i = start
    if i >= end:
        raise EquationError("malformed syntax")
    while i < end:
        s = syms[i]
        if s <= 9:
            j = i
            value = 0
            while j < end and syms[j] <= 9:
                value = value * 10 + syms[j]
                j += 1
            if syms[i] == 0 and j - i > 1:
                raise EquationError("leading zero")
            if last is None:
                last = value
            else:
                if pending is None:
                    raise EquationError("malformed syntax")
                if pending == PLUS:
                    acc, last = acc + last, value
                elif pending == MINUS:
                    acc, last = acc + last, -value
                elif pending == TIMES:
                    last = last * value
                else:
                    if value == 0:
                        raise EquationError("division by zero")
                    last = Fraction(last, 1) / value
                pending = None
            i = j
        elif s in OPS:
            if last is None or pending is not None:
                raise EquationError("malformed syntax")
            pending = s
            i += 1
        else:
            raise EquationError("malformed syntax")
    if last is None or pending is not None:
        raise EquationError("malformed syntax")
    return acc + last


def nerdle_validate(symbols: Sequence[int]) -> Equation:
    syms = [int(s) for s in symbols]
    if any(s < 0 or s > EQUALS for s in syms):
        raise EquationError("malformed syntax")
    if sum(1 for s in syms if s == EQUALS) != 1:
        raise EquationError("equals count")
    split = syms.index(EQUALS)
    left = _evaluate_side(syms, 0, split)
    right = _evaluate_side(syms, split + 1, len(syms))
    if left != right:
        raise EquationError("sides unequal")
    return Equation(tuple(syms), Fraction(left))


def rejection_reason(symbols: Sequence[int]) -> Optional[str]:
    try:
        nerdle_validate(symbols)
        return None
    except EquationError as e:
        return e.reason


def is_valid_equation(symbols: Sequence[int]) -> bool:
    return rejection_reason(symbols) is None


# ---------------------------------------------------------------------------
# value-join generation (materializes a whole length class)

GENERATION_CAP = 7  # side expressions stay small enough to group by value


def _numerals(length: int) -> Iterator[Tuple[int, ...]]:
    if length == 1:
        for d in range(10):
            yield (d,)
        return
    for first in range(1, 10):
        for rest in product(range(10), repeat=length - 1):
            yield (first,) + rest


def _numeral_value(tok: Tuple[int, ...]) -> int:
    v = 0
    for d in tok:
        v = v * 10 + d
    return v


def _expressions(max_len: int) -> Dict[int, Dict[tuple, List[tuple]]]:
    """By length: (acc, last) state -> token tuples.  The pair determines
    how appending another operator+numeral changes the value, which a
    flat value could not (precedence binds * and / to the last term)."""
    table: Dict[int, Dict[tuple, List[tuple]]] = {}
    for n in range(1, max_len + 1):
        bucket: Dict[tuple, List[tuple]] = {}
        for tok in _numerals(n):
            bucket.setdefault((0, _numeral_value(tok)), []).append(tok)
        for k in range(1, n - 1):
            m = n - k - 1
            numerals_m = [(tok, _numeral_value(tok)) for tok in _numerals(m)]
            for (acc, last), toks in table[k].items():
                for op in OPS:
                    for num_tok, v in numerals_m:
                        if op == PLUS:
                            state = (acc + last, v)
                        elif op == MINUS:
                            state = (acc + last, -v)
                        elif op == TIMES:
                            state = (acc, last * v)
                        else:
                            if v == 0:
                                continue
                            state = (acc, Fraction(last, 1) / v)
                        lst = bucket.setdefault(state, [])
                        for t in toks:
                            lst.append(t + (op,) + num_tok)
        table[n] = bucket
    return table


def all_equations(length: int) -> List[Tuple[int, ...]]:
    """Every valid equation of exactly this length, lexicographically sorted."""
    if length > GENERATION_CAP:
        raise ValueError(f"materialization capped at length {GENERATION_CAP}")
    if length < 3:
        return []
    table = _expressions(length - 2)
    by_value: Dict[int, Dict[object, List[tuple]]] = {}
    for n, bucket in table.items():
        values: Dict[object, List[tuple]] = {}
        for (acc, last), toks in bucket.items():
            values.setdefault(acc + last, []).extend(toks)
        by_value[n] = values
    out: List[Tuple[int, ...]] = []
    for a in range(1, length - 1):
        b = length - 1 - a
        if b < 1:
            continue
        smaller, larger = (a, b) if len(by_value[a]) <= len(by_value[b]) else (b, a)
        for v, _ in by_value[smaller].items():
            ltoks = by_value[a].get(v)
            rtoks = by_value[b].get(v)
            if not ltoks or not rtoks:
                continue
            out.extend(lt + (EQUALS,) + rt for lt in ltoks for rt in rtoks)
    out.sort()
    return out


# ---------------------------------------------------------------------------
# lexicographic streaming search

# parser state: eq_seen * 3 + mode, where mode 0 = numeral must start here,
# 1 = numeral so far is exactly "0", 2 = numeral continues normally
_N_STATES = 6


def _transition(state: int, sym: int) -> Optional[int]:
    eq_seen, mode = divmod(state, 3)
    if sym <= 9:
        if mode == 0:
            return eq_seen * 3 + (1 if sym == 0 else 2)
        if mode == 1:
            return None
        return state
    if sym == EQUALS:
        if eq_seen or mode == 0:
            return None
        return 3
    if mode == 0:
        return None
    return eq_seen * 3


_TRANS = [[_transition(s, sym) for sym in range(15)] for s in range(_N_STATES)]
_ACCEPT = [s in (4, 5) for s in range(_N_STATES)]


def iter_equations(length: int,
                   menus: Optional[Sequence[Sequence[int]]] = None
                   ) -> Iterator[Tuple[int, ...]]:
    """Stream valid equations of this length in lexicographic order.

    ``menus`` optionally restricts each cell to an allowed symbol set;
    cells must come sorted or they are sorted here.
    """
    if menus is None:
        cells = [tuple(range(15))] * length
    else:
        if len(menus) != length:
            raise ValueError("menu count must equal length")
        cells = [tuple(sorted(set(m))) for m in menus]
        if any(not c for c in cells):
            return
    # structural feasibility by backward induction over parser states
    feasible = [[False] * _N_STATES for _ in range(length + 1)]
    feasible[length] = list(_ACCEPT)
    for pos in range(length - 1, -1, -1):
        nxt = feasible[pos + 1]
        row = feasible[pos]
        for s in range(_N_STATES):
            for sym in cells[pos]:
                t = _TRANS[s][sym]
                if t is not None and nxt[t]:
                    row[s] = True
                    break
    if not feasible[0][0]:
        return
    prefix = [0] * length

    def walk(pos: int, state: int, acc, last, pending, cur, left_total):
        if pos == length:
            pair = _fold(acc, last, pending, cur)
            if pair is not None and pair[0] + pair[1] == left_total:
                yield tuple(prefix)
            return
        fea = feasible[pos + 1]
        for sym in cells[pos]:
            nstate = _TRANS[state][sym]
            if nstate is None or not fea[nstate]:
                continue
            prefix[pos] = sym
            if sym <= 9:
                ncur = sym if cur is None else cur * 10 + sym
                yield from walk(pos + 1, nstate, acc, last, pending, ncur, left_total)
            elif sym == EQUALS:
                pair = _fold(acc, last, pending, cur)
                if pair is not None:
                    yield from walk(pos + 1, nstate, 0, None, None, None,
                                    pair[0] + pair[1])
            else:
                pair = _fold(acc, last, pending, cur)
                if pair is not None:
                    yield from walk(pos + 1, nstate, pair[0], pair[1], sym,
                                    None, left_total)

    yield from walk(0, 0, 0, None, None, None, None)


def _fold(acc, last, pending, cur):
    """Fold the just-completed numeral into the (acc, last) register pair,
    keeping the last term separate so * and / bind to it alone."""
    if cur is None:
        return None
    if last is None:
        return (acc, cur)
    if pending == PLUS:
        return (acc + last, cur)
    if pending == MINUS:
        return (acc + last, -cur)
    if pending == TIMES:
        return (acc, last * cur)
    if pending == DIVIDE:
        if cur == 0:
            return None
        return (acc, Fraction(last, 1) / cur)
    return None


# ---------------------------------------------------------------------------
# shape-first constraint solving
#
# Lexicographic search is hopeless for long equations: digits sort before
# operators, so the stream grinds through every long numeral before it
# ever tries an operator split.  The solver below instead enumerates
# structural shapes (an '=' cell plus operator cells, fewest operators
# first), fills free digit cells with their least allowed symbols, and
# then solves one "balancer" numeral exactly so the sides agree.  The
# result is deterministic but not the lexicographic least; callers that
# need the true least use the materialized list of a small length class.


def solve_consistent(length: int,
                     menus: Sequence[Sequence[int]],
                     attempt_cap: int = 40000) -> Optional[List[int]]:
    """A valid equation with each cell drawn from its menu, or None.

    None only means this solver found nothing; it is deterministic and
    fast but not complete, so callers fall back to the exhaustive stream.
    """
    cells = [tuple(sorted(set(m))) for m in menus]
    if len(cells) != length or any(not c for c in cells):
        return None
    digit_menu = [tuple(s for s in c if s <= 9) for c in cells]
    op_menu = [tuple(s for s in c if s in OPS) for c in cells]
    eq_ok = [EQUALS in c for c in cells]
    pinned_eq = [p for p in range(length) if cells[p] == (EQUALS,)]
    if len(pinned_eq) > 1:
        return None
    if pinned_eq:
        eq_candidates = pinned_eq
    else:
        # balanced splits carry the most solutions: aim the '=' near the
        # two-thirds mark (sides of an addition have about equal width)
        ideal = round(2 * (length - 2) / 3) + 1
        eq_candidates = sorted((p for p in range(1, length - 1) if eq_ok[p]),
                               key=lambda p: (abs(p - ideal), -p))
    remaining = attempt_cap
    usable = [e for e in eq_candidates if 1 <= e <= length - 2]
    slice_cap = max(1500, attempt_cap // max(1, len(usable)))
    for e in usable:
        budget = [min(slice_cap, remaining)]
        spent = budget[0]
        tokens = _solve_with_equals(length, e, digit_menu, op_menu, budget)
        remaining -= spent - max(budget[0], 0)
        if tokens is not None:
            return tokens
        if remaining <= 0:
            break
    return None


def _solve_with_equals(length, e, digit_menu, op_menu, budget):
    sides = ((0, e), (e + 1, length))
    forced, optionals = [], []
    for lo, hi in sides:
        f, opt = [], []
        for p in range(lo, hi):
            if not digit_menu[p]:
                if not op_menu[p]:
                    return None
                f.append(p)
            elif op_menu[p]:
                opt.append(p)
        forced.append(tuple(f))
        optionals.append(opt)

    def ok_structure(lo, hi, ops):
        prev = lo - 1
        for p in ops:
            if p == lo or p == hi - 1 or p == prev + 1:
                return False
            prev = p
        return True

    def op_sets(side_idx, extra):
        lo, hi = sides[side_idx]
        base = forced[side_idx]
        pool = [p for p in optionals[side_idx] if p not in base]
        for combo in combinations(pool, extra):
            ops = tuple(sorted(base + combo))
            if ok_structure(lo, hi, ops):
                yield ops

    # interval bounds per side are shared across the other side's symbol
    # choices, so each side's variants are computed once and crossed
    var_cache = ({}, {})

    def menu_bounds(run):
        lo, hi = run
        blo = bhi = 0
        for p in range(lo, hi):
            menu = digit_menu[p]
            mn = menu[0]
            if p == lo and hi - lo > 1:
                mn = next((d for d in menu if d >= 1), None)
                if mn is None:
                    return None
            blo = blo * 10 + mn
            bhi = bhi * 10 + menu[-1]
        return (blo, bhi)

    def side_variants(side_idx, op_positions):
        got = var_cache[side_idx].get(op_positions)
        if got is None:
            lo, hi = sides[side_idx]
            runs = _numeral_runs(lo, hi, op_positions)
            bounds = [menu_bounds(r) for r in runs]
            got = []
            if all(b is not None for b in bounds):
                for combo in product(*[op_menu[p] for p in op_positions]):
                    ops = dict(zip(op_positions, combo))
                    got.append((ops, _shape_range(bounds, runs, ops)))
            var_cache[side_idx][op_positions] = got
        return got

    def iter_shapes():
        for total_extra in range(0, 4):
            for left_extra in range(total_extra + 1):
                right_extra = total_extra - left_extra
                for left_ops in op_sets(0, left_extra):
                    lvars = side_variants(0, left_ops)
                    for right_ops in op_sets(1, right_extra):
                        rvars = side_variants(1, right_ops)
                        for lops, lr in lvars:
                            for rops, rr in rvars:
                                over = (min(lr[1], rr[1])
                                        - max(lr[0], rr[0]))
                                if over < 0:
                                    continue
                                ops = dict(lops)
                                ops.update(rops)
                                yield (left_ops, right_ops), ops, over, (
                                    max(lr[1] - lr[0], rr[1] - rr[0]))

    shapes = list(islice(iter_shapes(), 700))
    if not shapes:
        return None
    budget[0] -= len(shapes)

    def promise(item):
        syms = list(item[1].values())
        # shapes whose side ranges barely graze are long shots: keep
        # them but behind every healthy overlap of the same arity
        sliver = 1 if item[2] * 1000 < item[3] else 0
        return (sum(1 for s in syms if s == DIVIDE), sliver,
                sum(1 for s in syms if s == TIMES),
                len(syms))

    shapes.sort(key=promise)

    # pass one slices the budget evenly so no layout starves the rest,
    # except the layouts tied for the best rank, which get room to run
    # their digit stages in full; pass two revisits the cut-off layouts
    # with the reserve
    slice1 = max(120, budget[0] // (2 * len(shapes)))
    best = promise(shapes[0])
    reserve = budget[0] // 4
    cache = {}
    cut_short = []
    untried = []
    for rank, item in enumerate(shapes):
        op_cells, ops = item[0], item[1]
        if budget[0] <= reserve:
            untried = [(s[0], s[1]) for s in shapes[rank:]]
            break
        boosted = rank < 8 and promise(item) == best
        local = [min(1200 if boosted else slice1, budget[0] - reserve)]
        before = local[0]
        toks = _balance_digits(sides, op_cells, ops, digit_menu, local, cache)
        budget[0] -= before - local[0]
        if toks is not None:
            return toks
        if local[0] <= 0:
            cut_short.append((op_cells, ops))
    # anything never attempted outranks a second dig at a cut-off layout
    retries = untried + cut_short
    for i, (op_cells, ops) in enumerate(retries):
        if budget[0] <= 0:
            return None
        even = max(400, budget[0] // (len(retries) - i))
        local = [min(even, budget[0])]
        before = local[0]
        toks = _balance_digits(sides, op_cells, ops, digit_menu, local, cache)
        budget[0] -= before - local[0]
        if toks is not None:
            return toks
    return None


def _shape_range(bounds, runs, ops):
    """Interval bound on the side's value from per-run menu bounds.
    Mirrors the (acc, last) evaluation over runs."""
    acc = (0, 0)
    last = bounds[0]
    for run, cur in zip(runs[1:], bounds[1:]):
        op = ops[run[0] - 1]
        if op == PLUS:
            acc = (acc[0] + last[0], acc[1] + last[1])
            last = cur
        elif op == MINUS:
            acc = (acc[0] + last[0], acc[1] + last[1])
            last = (-cur[1], -cur[0])
        elif op == TIMES:
            # run values are never negative, but last may be a negated term
            combos = [last[0] * cur[0], last[0] * cur[1],
                      last[1] * cur[0], last[1] * cur[1]]
            last = (min(combos), max(combos))
        else:
            # exact divisor is at least 1 in any valid equation
            d_lo, d_hi = max(cur[0], 1), max(cur[1], 1)
            corners = [last[0] / d_lo, last[0] / d_hi,
                       last[1] / d_lo, last[1] / d_hi]
            last = (math.floor(min(corners)), math.ceil(max(corners)))
    return (acc[0] + last[0], acc[1] + last[1])


def _numeral_runs(lo, hi, ops):
    runs, start = [], lo
    for p in ops:
        runs.append((start, p))
        start = p + 1
    runs.append((start, hi))
    return runs


def _default_digits(run, digit_menu, nonzero):
    lo, hi = run
    if hi - lo == 1:
        menu = digit_menu[lo]
        pick = next((d for d in menu if d > 0), None) if nonzero else menu[0]
        if nonzero and pick is None:
            return None
        return [menu[0] if not nonzero else pick]
    out = []
    lead = next((d for d in digit_menu[lo] if d >= 1), None)
    if lead is None:
        return None
    out.append(lead)
    for p in range(lo + 1, hi):
        out.append(digit_menu[p][0])
    return out


def _render_numeral(value, run, digit_menu):
    lo, hi = run
    n = hi - lo
    if value < 0:
        return None
    digits = [int(ch) for ch in str(value)]
    if len(digits) != n:
        return None
    for d, p in zip(digits, range(lo, hi)):
        if d not in digit_menu[p]:
            return None
    return digits


def _run_candidates(run, digit_menu, nonzero, cap):
    """Up to cap (digits, value) fillings: the default, then one-cell
    variants with the leading cell first (magnitude spread), then a
    dense lex fill."""
    lo, hi = run
    multi = hi - lo > 1
    default = _default_digits(run, digit_menu, nonzero)
    if default is None:
        return []

    def value_of(digs):
        v = 0
        for d in digs:
            v = v * 10 + d
        return v

    out = [(default, value_of(default))]
    seen = {tuple(default)}

    def cell_menu(pos):
        menu = digit_menu[pos]
        if pos == lo and multi:
            menu = tuple(d for d in menu if d >= 1)
        return menu

    for pos in range(lo, hi):
        for d in cell_menu(pos):
            if len(out) >= cap:
                return out
            cand = list(default)
            cand[pos - lo] = d
            if nonzero and not any(cand):
                continue
            t = tuple(cand)
            if t not in seen:
                seen.add(t)
                out.append((cand, value_of(cand)))

    def rec(pos, acc):
        if len(out) >= cap:
            return
        if pos == hi:
            if nonzero and not any(acc):
                return
            t = tuple(acc)
            if t not in seen:
                seen.add(t)
                out.append((list(acc), value_of(acc)))
            return
        for d in cell_menu(pos):
            if len(out) >= cap:
                return
            acc.append(d)
            rec(pos + 1, acc)
            acc.pop()

    rec(lo, [])
    return out


def _factor_assign(runs, target, digit_menu, cache):
    """Split a nonnegative product over the runs: short runs enumerate
    divisors of what is left, the longest run takes the exact remainder.
    Returns {run: digits} or None."""
    order = sorted(runs, key=lambda r: r[1] - r[0])

    if target == 0:
        # some factor must be the lone digit 0; the rest take defaults
        zero = next((r for r in order
                     if r[1] - r[0] == 1 and 0 in digit_menu[r[0]]), None)
        if zero is None:
            return None
        got = {zero: [0]}
        for r in order:
            if r is zero:
                continue
            digs = _default_digits(r, digit_menu, nonzero=False)
            if digs is None:
                return None
            got[r] = digs
        return got

    def options(run):
        n = run[1] - run[0]
        if n > 3:
            size = 1
            for p in range(*run):
                size *= len(digit_menu[p])
                if size > 400:
                    return None
        key = ('fac', run)
        got = cache.get(key)
        if got is None:
            got = _run_candidates(run, digit_menu, True, 1000)
            cache[key] = got
        return got

    def rec(i, m):
        run = order[i]
        if i == len(order) - 1:
            digs = _render_numeral(m, run, digit_menu)
            return {run: digs} if digs is not None else None
        cand = options(run)
        if cand is None:
            return None
        tried = 0
        for digs, v in cand:
            if v == 0 or m % v:
                continue
            rest = rec(i + 1, m // v)
            if rest is not None:
                rest[run] = digs
                return rest
            tried += 1
            if tried >= 48:
                break
        return None

    return rec(0, target)


_ZERO_COL = (0,)
_ZERO_SET = frozenset((0,))


def _col_menus(cells_msd, digit_menu, cache):
    """Per-column digit menus for a numeral, least significant first.
    The most significant digit of a multi-digit numeral cannot be zero."""
    key = ('cols', cells_msd)
    got = cache.get(key)
    if got is None:
        lsd = list(reversed(cells_msd))
        menus = []
        for col, cell in enumerate(lsd):
            m = digit_menu[cell]
            if col == len(lsd) - 1 and len(lsd) > 1:
                m = tuple(d for d in m if d >= 1)
            menus.append(m)
        got = (menus, [frozenset(m) for m in menus])
        cache[key] = got
    return got


def _column_solve(cells_x, cells_y, k_digits, digit_menu, subtract, cache):
    """Digits for X and Y with X+Y=K, or X-Y=K when subtract (all LSD-first
    column arithmetic with carries).  cells_* are cell indices MSD-first."""
    menus_x, _ = _col_menus(tuple(cells_x), digit_menu, cache)
    _, sets_y = _col_menus(tuple(cells_y), digit_menu, cache)
    nx, ny = len(cells_x), len(cells_y)
    cols = max(nx, ny, len(k_digits))
    dead = set()

    def rec(col, carry, acc_x, acc_y):
        if col == cols:
            return carry == 0
        if (col, carry) in dead:
            return False
        kd = k_digits[col] if col < len(k_digits) else 0
        ymenu = sets_y[col] if col < ny else _ZERO_SET
        for dx in (menus_x[col] if col < nx else _ZERO_COL):
            if subtract:
                # Y + K = X column-wise: dx = dy + kd + carry (mod 10)
                dy = (dx - kd - carry) % 10
                nxt = (dy + kd + carry - dx) // 10
            else:
                dy = (kd - dx - carry) % 10
                nxt = (dx + dy + carry - kd) // 10
            if dy not in ymenu:
                continue
            acc_x.append(dx)
            acc_y.append(dy)
            if rec(col + 1, nxt, acc_x, acc_y):
                return True
            acc_x.pop()
            acc_y.pop()
        dead.add((col, carry))
        return False

    got_x: List[int] = []
    got_y: List[int] = []
    if not rec(0, 0, got_x, got_y):
        return None
    if any(got_x[nx:]) or any(got_y[ny:]):
        return None
    dig_x = list(reversed(got_x[:nx]))
    dig_y = list(reversed(got_y[:ny]))
    return dig_x, dig_y


def _mult_solve(a, cells_y, cells_r, const, prod_sign, digit_menu, cache,
                node_cap=4000):
    """Digits for Y and R with R = prod_sign*(a*Y) + const, via long
    multiplication columns (multiply carry and add/borrow carry)."""
    if prod_sign < 0 and const < 0:
        return None
    sub_const = const < 0
    sub_prod = prod_sign < 0
    menus_y, _ = _col_menus(tuple(cells_y), digit_menu, cache)
    _, sets_r = _col_menus(tuple(cells_r), digit_menu, cache)
    ny, nr = len(cells_y), len(cells_r)
    cd = [int(c) for c in reversed(str(abs(const)))] if const else [0]
    cols = max(ny + len(str(max(a, 1))) + 1, nr, len(cd)) + 1
    dead = set()
    nodes = [0]

    def rec(col, mc, ac, acc_y, acc_r):
        nodes[0] += 1
        if nodes[0] > node_cap:
            return False
        if col == cols:
            return mc == 0 and ac == 0
        key = (col, mc, ac)
        if key in dead:
            return False
        kd = cd[col] if col < len(cd) else 0
        rmenu = sets_r[col] if col < nr else _ZERO_SET
        for b in (menus_y[col] if col < ny else _ZERO_COL):
            t = a * b + mc
            tj, mc2 = t % 10, t // 10
            if sub_prod:
                s = kd - tj - ac
            elif sub_const:
                s = tj - kd - ac
            else:
                s = tj + kd + ac
            rj = s % 10
            if sub_prod or sub_const:
                ac2 = 1 if s < 0 else 0
            else:
                ac2 = s // 10
            if rj not in rmenu:
                continue
            acc_y.append(b)
            acc_r.append(rj)
            if rec(col + 1, mc2, ac2, acc_y, acc_r):
                return True
            acc_y.pop()
            acc_r.pop()
        dead.add(key)
        return False

    got_y: List[int] = []
    got_r: List[int] = []
    if not rec(0, 0, 0, got_y, got_r):
        return None
    dig_y = list(reversed(got_y[:ny]))
    dig_r = list(reversed(got_r[:nr]))
    return dig_y, dig_r


def _solve_pair(sign_x, run_x, sign_y, run_y, k, digit_menu, cache):
    """Digit fillings with sign_x*X + sign_y*Y = k, or None."""
    if sign_x == -1 and sign_y == -1:
        sign_x = sign_y = 1
        k = -k
    if sign_x == -1:
        sign_x, run_x, sign_y, run_y = sign_y, run_y, sign_x, run_x
    subtract = sign_y == -1
    if subtract and k < 0:
        run_x, run_y = run_y, run_x
        k = -k
    if not subtract and k < 0:
        return None
    k_digits = [int(c) for c in reversed(str(k))] if k else [0]
    cells_x = list(range(run_x[0], run_x[1]))
    cells_y = list(range(run_y[0], run_y[1]))
    got = _column_solve(cells_x, cells_y, k_digits, digit_menu, subtract,
                        cache)
    if got is None:
        return None
    return {run_x: got[0], run_y: got[1]}


def _balance_digits(sides, op_cells, ops, digit_menu, budget, cache=None):
    if cache is None:
        cache = {}
    assign = {}
    val = {}
    side_runs = []
    divisor = {}

    def put(run, digits):
        assign[run] = digits
        v = 0
        for d in digits:
            v = v * 10 + d
        val[run] = v

    for (lo, hi), cellset in zip(sides, op_cells):
        runs = _numeral_runs(lo, hi, cellset)
        side_runs.append(runs)
        for run in runs:
            divisor[run] = run[0] > lo and ops[run[0] - 1] == DIVIDE
            digits = _default_digits(run, digit_menu, nonzero=divisor[run])
            if digits is None:
                return None
            put(run, digits)

    # evaluation plan: runs glued by * and / form groups, each group
    # carries the additive sign in front of it
    plans = []
    for (lo, hi), runs in zip(sides, side_runs):
        groups = []
        for run in runs:
            prev = ops.get(run[0] - 1) if run[0] > lo else None
            if prev in (TIMES, DIVIDE):
                groups[-1][1].append((prev, run))
            else:
                groups.append((-1 if prev == MINUS else 1, [(None, run)]))
        plans.append(groups)

    def group_value(chain, swap=None, value=None):
        acc = None
        for op, run in chain:
            v = value if run == swap else val[run]
            if acc is None:
                acc = v
            elif op == TIMES:
                acc = acc * v
            elif v == 0:
                return None
            elif isinstance(acc, int):
                if acc % v == 0:
                    acc //= v
                else:
                    acc = Fraction(acc, v)
            else:
                acc = acc / v
        return acc

    def side_value(side_idx):
        total = 0
        for sign, chain in plans[side_idx]:
            g = group_value(chain)
            if g is None:
                return None
            total += sign * g
        return total

    def assemble():
        length = sides[1][1]
        toks = [None] * length
        toks[sides[0][1]] = EQUALS
        for p, sym in ops.items():
            toks[p] = sym
        for runs in side_runs:
            for run in runs:
                for i, p in enumerate(range(run[0], run[1])):
                    toks[p] = assign[run][i]
        if any(t is None for t in toks):
            return None
        if rejection_reason(toks) is not None:
            return None
        return toks

    left, right = side_value(0), side_value(1)
    if left is not None and left == right:
        done = assemble()
        if done is not None:
            return done

    run_side = {run: i for i, runs in enumerate(side_runs) for run in runs}
    all_runs = side_runs[0] + side_runs[1]

    # sign of each run that sits alone at additive level; runs glued
    # into a * or / chain have no linear coefficient
    linear = {}
    for i, groups in enumerate(plans):
        for sign, chain in groups:
            if len(chain) == 1:
                linear[chain[0][1]] = sign if i == 0 else -sign

    def sweep(balancer_runs, solve, bucket):
        # pinned boards have tiny joint menus, so enumerate them fully;
        # loose boards sweep a spread per run, wide runs capped by how
        # many of them share the product
        others = [r for r in all_runs if r not in balancer_runs]
        dense = 1
        for r in others:
            for p in range(r[0], r[1]):
                dense *= len(digit_menu[p])
                if dense > 2500:
                    break
            if dense > 2500:
                break
        if dense <= 2500:
            caps = dict.fromkeys(others, 2600)
        else:
            m_multi = sum(1 for r in others if r[1] - r[0] > 1)
            mcap = {0: 1, 1: 40, 2: 12, 3: 6, 4: 4}.get(m_multi, 3)
            caps = {r: (10 if r[1] - r[0] == 1 else mcap) for r in others}
        cand = []
        for r in others:
            key = (r, divisor[r], caps[r])
            got = cache.get(key)
            if got is None:
                got = _run_candidates(r, digit_menu, key[1], key[2])
                cache[key] = got
            cand.append(got)
        for combo in islice(product(*cand), 6000):
            bucket[0] -= 1
            budget[0] -= 1
            if bucket[0] < 0 or budget[0] <= 0:
                return None
            for r, (digs, v) in zip(others, combo):
                assign[r] = digs
                val[r] = v
            if solve():
                done = assemble()
                if done is not None:
                    return done
        return None

    def stage_bucket(floor=70):
        # keep one starved stage from eating the whole shape budget
        return [min(budget[0], max(floor, budget[0] // 3))]

    # * and / chains at additive level; the chain's sign comes from the
    # +/- in front of it (csign is adjusted for the side, sign is raw)
    chain_info = []
    for i, groups in enumerate(plans):
        for sign, chain in groups:
            if len(chain) >= 2:
                runs = tuple(r for _, r in chain)
                mult = tuple(r for op, r in chain if op != DIVIDE)
                div = tuple(r for op, r in chain if op == DIVIDE)
                chain_info.append((runs, sign if i == 0 else -sign, sign,
                                   chain, mult, div))

    run_chain = {}
    for i, groups in enumerate(plans):
        for sign, chain in groups:
            for _, run in chain:
                run_chain[run] = (sign, chain)

    def rest_groups(sb, chain):
        rest = 0
        for s2, ch2 in plans[sb]:
            if ch2 is chain:
                continue
            g2 = group_value(ch2)
            if g2 is None:
                return None
            rest += s2 * g2
        return rest

    # two additive runs solved by column arithmetic, the rest swept
    def pair_solver(run_x, run_y):
        def solve():
            lv, rv = side_value(0), side_value(1)
            if lv is None or rv is None:
                return False
            const = (lv - rv - linear[run_x] * val[run_x]
                     - linear[run_y] * val[run_y])
            if not isinstance(const, int):
                if const.denominator != 1:
                    return False
                const = int(const)
            got = _solve_pair(linear[run_x], run_x, linear[run_y], run_y,
                              -const, digit_menu, cache)
            if got is None:
                return False
            for r, digs in got.items():
                if divisor[r] and not any(digs):
                    return False
                put(r, digs)
            return side_value(0) == side_value(1) != None
        return solve

    # one chain factor solved against a standalone template run by long
    # multiplication columns; the other factors and divisors are swept,
    # and the job applies only when their ratio is a whole number
    def col_solver(mult, div, unknown, tpl, csign):
        def solve():
            lv, rv = side_value(0), side_value(1)
            if lv is None or rv is None:
                return False
            a = 1
            for r in mult:
                if r != unknown:
                    a *= val[r]
            for r in div:
                if val[r] == 0 or a % val[r]:
                    return False
                a //= val[r]
            if a == 0:
                return False
            rest = (lv - rv - csign * a * val[unknown]
                    - linear[tpl] * val[tpl])
            if not isinstance(rest, int):
                if rest.denominator != 1:
                    return False
                rest = int(rest)
            budget[0] -= 4
            got = _mult_solve(a, list(range(*unknown)), list(range(*tpl)),
                              -rest * linear[tpl],
                              -csign * linear[tpl], digit_menu, cache)
            if got is None:
                return False
            if divisor[tpl] and not any(got[1]):
                return False
            put(unknown, got[0])
            put(tpl, got[1])
            return side_value(0) == side_value(1) != None
        return solve

    # whole chain solved at once: the required chain value is exact when
    # everything else is swept, so the multiplied runs are recovered by
    # factoring it (divisor runs stay swept)
    def chain_solver(sign, chain, mult_runs, div_runs, sb):
        def solve():
            target = side_value(1 - sb)
            if target is None:
                return False
            rest = rest_groups(sb, chain)
            if rest is None:
                return False
            need = (target - rest) * sign
            for r in div_runs:
                if val[r] == 0:
                    return False
                need = need * val[r]
            if not isinstance(need, int):
                if need.denominator != 1:
                    return False
                need = int(need)
            if need < 0:
                return False
            budget[0] -= 1
            got = _factor_assign(mult_runs, need, digit_menu, cache)
            if got is None:
                return False
            for r, digs in got.items():
                put(r, digs)
            return side_value(0) == side_value(1) != None
        return solve

    # single balancer solved in closed form: the side is affine in the
    # run's value (or in its reciprocal when the run divides), so one
    # coefficient extraction replaces any probing
    def single_solver(bal, sb):
        def solve():
            target = side_value(1 - sb)
            if target is None:
                return False
            sign, chain = run_chain[bal]
            coeff = group_value(chain, swap=bal, value=1)
            if coeff is None or coeff == 0:
                return False
            rest = rest_groups(sb, chain)
            if rest is None:
                return False
            want = (target - rest) * sign
            num, den = (coeff, want) if divisor[bal] else (want, coeff)
            if isinstance(num, int) and isinstance(den, int):
                if den == 0 or num % den:
                    return False
                v = num // den
            else:
                frac = Fraction(num) / den if den else None
                if frac is None or frac.denominator != 1:
                    return False
                v = int(frac)
            if v < 0 or (divisor[bal] and v == 0):
                return False
            digits = _render_numeral(v, bal, digit_menu)
            if digits is None:
                return False
            saved, saved_v = assign[bal], val[bal]
            assign[bal] = digits
            val[bal] = v
            if side_value(0) == side_value(1) != None:
                return True
            assign[bal] = saved
            val[bal] = saved_v
            return False
        return solve

    # every way of finishing the shape, cheapest joint sweep first: a
    # small swept menu is both quick and the most likely to pin the
    # remaining freedom, so stage kinds interleave on that one measure
    dense_of = {}
    for r in all_runs:
        d = 1
        for p in range(r[0], r[1]):
            d *= len(digit_menu[p])
        dense_of[r] = d

    def sweep_cost(balancers):
        c = 1
        for r in all_runs:
            if r not in balancers:
                c *= dense_of[r]
        return c

    jobs = []
    pairs = sorted(combinations(linear, 2),
                   key=lambda pq: (-(pq[0][1] - pq[0][0] + pq[1][1] - pq[1][0]),
                                   pq))
    for run_x, run_y in pairs:
        jobs.append((sweep_cost((run_x, run_y)), len(jobs), 70,
                     (run_x, run_y), pair_solver(run_x, run_y)))
    col_jobs = [(mult, div, unknown, tpl, csign)
                for runs, csign, _, _, mult, div in chain_info
                for tpl in sorted(linear, key=lambda r: r[0] - r[1])
                if tpl not in runs
                for unknown in sorted(mult, key=lambda r: r[0] - r[1])]
    col_jobs.sort(key=lambda j: sweep_cost((j[2], j[3])))
    for mult, div, unknown, tpl, csign in col_jobs[:10]:
        jobs.append((sweep_cost((unknown, tpl)), len(jobs), 420,
                     (unknown, tpl), col_solver(mult, div, unknown, tpl,
                                                csign)))
    for runs, _, sign, chain, mult_runs, div_runs in chain_info:
        jobs.append((sweep_cost(mult_runs), len(jobs), 260, mult_runs,
                     chain_solver(sign, chain, mult_runs, div_runs,
                                  run_side[runs[0]])))
    for bal in list(reversed(side_runs[1])) + list(reversed(side_runs[0])):
        jobs.append((sweep_cost((bal,)), len(jobs), 380, (bal,),
                     single_solver(bal, run_side[bal])))
    jobs.sort(key=lambda j: (j[0], j[1]))

    for _, _, floor, balancer_runs, solve in jobs:
        if budget[0] <= 0:
            return None
        done = sweep(balancer_runs, solve, stage_bucket(floor))
        if done is not None:
            return done
    return None


def random_equation(length: int, rng: Random, max_attempts: int = 20000) -> FiniteWord:
    """A deterministic pseudorandom valid equation of the given length."""
    if length < 3:
        raise ValueError("no valid equations shorter than 3 symbols")
    for _ in range(max_attempts):
        right_len = rng.randint(1, max(1, min(12, length - 2)))
        left_len = length - 1 - right_len
        if left_len < 1:
            continue
        max_parts = max(1, min(4, (left_len + 1) // 2))
        parts = rng.randint(1, max_parts)
        sizes = _random_composition(left_len - (parts - 1), parts, rng)
        if sizes is None:
            continue
        toks: List[int] = []
        for idx, size in enumerate(sizes):
            if idx:
                toks.append(rng.choice(OPS))
            toks.extend(_random_numeral(size, rng))
        try:
            value = _evaluate_side(toks, 0, len(toks))
        except EquationError:
            continue
        if isinstance(value, Fraction):
            if value.denominator != 1:
                continue
            value = value.numerator
        if value < 0:
            continue
        digits = [int(ch) for ch in str(value)]
        if len(digits) != right_len:
            continue
        return FiniteWord.from_symbols(toks + [EQUALS] + digits)
    raise RuntimeError(f"no random equation of length {length} found")


def _random_composition(total: int, parts: int, rng: Random) -> Optional[List[int]]:
    if total < parts:
        return None
    sizes = [1] * parts
    for _ in range(total - parts):
        sizes[rng.randrange(parts)] += 1
    return sizes


def _random_numeral(size: int, rng: Random) -> List[int]:
    if size == 1:
        return [rng.randrange(10)]
    return [rng.randrange(1, 10)] + [rng.randrange(10) for _ in range(size - 1)]
