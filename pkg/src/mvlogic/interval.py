"""Closed intervals of chain indices, used as imprecise truth values."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import StructuralError


@dataclass(frozen=True, order=True)
class Interval:
    """``[lo, hi]`` with both endpoints being indices into some chain."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if not (0 <= self.lo <= self.hi):
            raise StructuralError(f"bad interval [{self.lo}, {self.hi}]")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> int:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2

    def contains(self, value: int) -> bool:
        return self.lo <= value <= self.hi

    def issubset(self, other: Interval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def to_json(self) -> list[int]:
        return [self.lo, self.hi]

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


def point(value: int) -> Interval:
    return Interval(value, value)


def hull(a: Interval, b: Interval) -> Interval:
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))
