"""Eventually-periodic sets of word positions.

Agreement and disagreement sets between structured infinite words are
always of the form "a union of residue classes, plus finitely many added
positions, minus finitely many removed positions".  ``PositionSet``
represents exactly that and supports the handful of set operations the
feedback analysis needs: membership, cardinality, complement,
intersection with a residue class, and listing the finite part.

Invariants kept by the constructor:
  * ``added`` is disjoint from the residue part,
  * ``removed`` is a subset of the residue part,
so the denoted set is ``{p : p % modulus in residues} - removed + added``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import FrozenSet, Iterable, Iterator

from .cardinal import Cardinal, Fin, OMEGA


@dataclass(frozen=True)
class PositionSet:
    modulus: int = 1
    residues: FrozenSet[int] = frozenset()
    added: FrozenSet[int] = frozenset()
    removed: FrozenSet[int] = frozenset()

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if any(not (0 <= r < self.modulus) for r in self.residues):
            raise ValueError("residues out of range")
        in_res = lambda p: p % self.modulus in self.residues
        object.__setattr__(self, "added", frozenset(p for p in self.added if not in_res(p)))
        object.__setattr__(self, "removed", frozenset(p for p in self.removed if in_res(p)))
        if any(p < 0 for p in self.added | self.removed):
            raise ValueError("positions must be nonnegative")

    # -- constructors -------------------------------------------------

    @staticmethod
    def finite(positions: Iterable[int]) -> "PositionSet":
        return PositionSet(1, frozenset(), frozenset(positions), frozenset())

    @staticmethod
    def cofinite(missing: Iterable[int]) -> "PositionSet":
        return PositionSet(1, frozenset({0}), frozenset(), frozenset(missing))

    @staticmethod
    def everything() -> "PositionSet":
        return PositionSet(1, frozenset({0}))

    @staticmethod
    def empty() -> "PositionSet":
        return PositionSet(1, frozenset())

    @staticmethod
    def periodic(modulus: int, residues: Iterable[int]) -> "PositionSet":
        return PositionSet(modulus, frozenset(residues))

    # -- queries ------------------------------------------------------

    def __contains__(self, p: int) -> bool:
        if p in self.added:
            return True
        if p in self.removed:
            return False
        return p % self.modulus in self.residues

    @property
    def is_infinite(self) -> bool:
        return bool(self.residues)

    def cardinality(self) -> Cardinal:
        if self.residues:
            return OMEGA
        return Fin(len(self.added))

    def finite_positions(self) -> FrozenSet[int]:
        """The set itself, when finite."""
        if self.residues:
            raise ValueError("set is infinite")
        return self.added

    def is_cofinite(self) -> bool:
        return len(self.residues) == self.modulus

    def missing_positions(self) -> FrozenSet[int]:
        """Complement as a finite set, when the set is cofinite."""
        if not self.is_cofinite():
            raise ValueError("set is not cofinite")
        return self.removed

    def complement(self) -> "PositionSet":
        comp = frozenset(range(self.modulus)) - self.residues
        return PositionSet(self.modulus, comp, added=self.removed, removed=self.added)

    def with_edits(self, force_in: Iterable[int], force_out: Iterable[int]) -> "PositionSet":
        """Override membership on finitely many positions."""
        force_in, force_out = frozenset(force_in), frozenset(force_out)
        if force_in & force_out:
            raise ValueError("a position cannot be both forced in and out")
        in_res = lambda p: p % self.modulus in self.residues
        added = (self.added - force_out) | {p for p in force_in if not in_res(p)}
        removed = (self.removed - force_in) | {p for p in force_out if in_res(p)}
        return PositionSet(self.modulus, self.residues, added, removed)

    def rescale(self, modulus: int) -> "PositionSet":
        """Same set expressed with a modulus that is a multiple of ours."""
        if modulus % self.modulus:
            raise ValueError("new modulus must be a multiple")
        res = frozenset(
            r for r in range(modulus) if r % self.modulus in self.residues
        )
        return PositionSet(modulus, res, self.added, self.removed)

    def intersect(self, other: "PositionSet") -> "PositionSet":
        m = lcm(self.modulus, other.modulus)
        a, b = self.rescale(m), other.rescale(m)
        res = a.residues & b.residues
        # Finite corrections: anything claimed by residues but absent from
        # either side must be removed; added points present in both stay.
        removed = frozenset(p for p in a.removed | b.removed if p % m in res)
        added = frozenset(
            p for p in a.added | b.added
            if p in self and p in other and p % m not in res
        )
        return PositionSet(m, res, added, removed)

    def union(self, other: "PositionSet") -> "PositionSet":
        m = lcm(self.modulus, other.modulus)
        a, b = self.rescale(m), other.rescale(m)
        res = a.residues | b.residues
        # a point stays removed only if neither operand contains it
        removed = frozenset(
            p for p in a.removed | b.removed
            if p % m in res and p not in self and p not in other
        )
        added = frozenset(p for p in a.added | b.added if p % m not in res)
        return PositionSet(m, res, added, removed)

    def shift_membership(self, k: int) -> "PositionSet":
        """The set {p : p - k in self} for k >= 0 (left padding excluded)."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        m = self.modulus
        res = frozenset((r + k) % m for r in self.residues)
        added = frozenset(p + k for p in self.added)
        removed = frozenset(p + k for p in self.removed)
        # positions below k are never of the form p + k; carve them out
        low = frozenset(p for p in range(k) if p % m in res)
        return PositionSet(m, res, added, removed | low)

    def iter_members(self, limit: int) -> Iterator[int]:
        for p in range(limit):
            if p in self:
                yield p

    def count_below(self, limit: int) -> int:
        return sum(1 for _ in self.iter_members(limit))

    def least_member(self, search_bound: int = 1 << 20):
        if not self.residues:
            return min(self.added) if self.added else None
        for p in range(search_bound):
            if p in self:
                return p
        raise AssertionError("unreachable: infinite set with no small member")

    def to_json(self):
        if not self.residues:
            return {"kind": "finite", "positions": sorted(self.added)}
        if self.is_cofinite():
            return {"kind": "cofinite", "missing": sorted(self.removed),
                    "extra": sorted(self.added)}
        return {
            "kind": "periodic",
            "modulus": self.modulus,
            "residues": sorted(self.residues),
            "added": sorted(self.added),
            "removed": sorted(self.removed),
        }
