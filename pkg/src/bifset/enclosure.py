"""Closed numeric enclosures [lo, hi] at mpmath precision."""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath


@dataclass(frozen=True)
class Enclosure:
    lo: mpmath.mpf
    hi: mpmath.mpf
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def mid(self):
        return (self.lo + self.hi) / 2

    def __contains__(self, v) -> bool:
        return self.lo <= v <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Enclosure") -> "Enclosure":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint enclosures")
        return Enclosure(lo, hi, {**self.meta, **other.meta})

    def fmt(self, digits: int = 12) -> str:
        return f"[{mpmath.nstr(self.lo, digits)}, {mpmath.nstr(self.hi, digits)}]"

    def __str__(self) -> str:
        return self.fmt()
