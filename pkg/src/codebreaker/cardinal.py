"""Counting values for games on infinite words.

Counts live in the naturals extended by a single infinite value ``OMEGA``.
Arithmetic follows cardinal conventions: addition absorbs into omega,
subtraction is truncated (monus), and the order is the obvious one with
omega on top.  Play stages are indexed by ordinals of the shape
``omega * q + r`` so a strategy can guess at every finite stage and still
make a claim at stage omega.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import total_ordering
from typing import Union


@total_ordering
@dataclass(frozen=True)
class Cardinal:
    """A count in {0, 1, 2, ...} + {omega}. ``value`` of None means omega."""

    value: Union[int, None]

    def __post_init__(self) -> None:
        if self.value is not None:
            if not isinstance(self.value, int) or isinstance(self.value, bool):
                raise TypeError(f"finite cardinal needs an int, got {self.value!r}")
            if self.value < 0:
                raise ValueError(f"cardinal cannot be negative: {self.value}")

    @property
    def is_omega(self) -> bool:
        return self.value is None

    @property
    def is_finite(self) -> bool:
        return self.value is not None

    def finite(self) -> int:
        """The integer value; raises on omega."""
        if self.value is None:
            raise ValueError("omega has no finite value")
        return self.value

    def __add__(self, other: "Cardinal") -> "Cardinal":
        other = as_cardinal(other)
        if self.is_omega or other.is_omega:
            return OMEGA
        return Cardinal(self.value + other.value)

    __radd__ = __add__

    def monus(self, other: "Cardinal") -> "Cardinal":
        """Truncated subtraction: max(a - b, 0), with omega - finite = omega
        and anything - omega = 0."""
        other = as_cardinal(other)
        if other.is_omega:
            return ZERO
        if self.is_omega:
            return OMEGA
        return Cardinal(max(self.value - other.value, 0))

    def min(self, other: "Cardinal") -> "Cardinal":
        other = as_cardinal(other)
        return self if self <= other else other

    def __lt__(self, other: "Cardinal") -> bool:
        other = as_cardinal(other)
        if self.is_omega:
            return False
        if other.is_omega:
            return True
        return self.value < other.value

    def __bool__(self) -> bool:
        return self.is_omega or self.value != 0

    def __repr__(self) -> str:
        return "omega" if self.is_omega else f"Fin({self.value})"

    def to_json(self) -> Union[int, str]:
        return "omega" if self.is_omega else self.value

    @staticmethod
    def from_json(data: Union[int, str]) -> "Cardinal":
        if data == "omega":
            return OMEGA
        if isinstance(data, int) and not isinstance(data, bool):
            return Cardinal(data)
        raise ValueError(f"not a cardinal: {data!r}")


def Fin(n: int) -> Cardinal:
    return Cardinal(n)


OMEGA = Cardinal(None)
ZERO = Cardinal(0)


def as_cardinal(x: Union[Cardinal, int]) -> Cardinal:
    if isinstance(x, Cardinal):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Cardinal(x)
    raise TypeError(f"expected a cardinal or int, got {x!r}")


def cardinal_sum(parts) -> Cardinal:
    """Sum of finitely many cardinals (omega absorbs)."""
    total = 0
    for p in parts:
        p = as_cardinal(p)
        if p.is_omega:
            return OMEGA
        total += p.value
    return Cardinal(total)


@total_ordering
@dataclass(frozen=True)
class OrdinalStage:
    """A stage ``omega * q + r``; ordered lexicographically on (q, r).

    Finite stages are q=0; the canonical claim stage is omega itself,
    ``OrdinalStage(1, 0)``.
    """

    q: int = 0
    r: int = 0

    def __post_init__(self) -> None:
        if self.q < 0 or self.r < 0:
            raise ValueError("stage components must be nonnegative")

    @property
    def is_finite(self) -> bool:
        return self.q == 0

    def successor(self) -> "OrdinalStage":
        return OrdinalStage(self.q, self.r + 1)

    def __lt__(self, other: "OrdinalStage") -> bool:
        return (self.q, self.r) < (other.q, other.r)

    def __repr__(self) -> str:
        if self.q == 0:
            return f"stage({self.r})"
        head = "w" if self.q == 1 else f"w*{self.q}"
        return f"stage({head}+{self.r})" if self.r else f"stage({head})"

    def to_json(self):
        return self.r if self.q == 0 else {"q": self.q, "r": self.r}

    @staticmethod
    def from_json(data) -> "OrdinalStage":
        if isinstance(data, int):
            return OrdinalStage(0, data)
        return OrdinalStage(int(data["q"]), int(data["r"]))


STAGE_OMEGA = OrdinalStage(1, 0)
