"""The recurrence spectrum R = {2 + 1/x : x in E} of Sturmian sequences,
its sections, and a small recurrence-function demonstration."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

import mpmath

from .cf import (ExactNumber, compare, format_exact, periodic, tail, to_exact,
                 to_mpf)
from .dims import dim_estimate
from .enclosure import Enclosure
from .exceptional import in_E


@dataclass(frozen=True)
class SpectrumPoint:
    """A real number >= 1 stored as integer part plus a fraction in [0, 1)."""
    whole: int
    frac: ExactNumber

    def mpf(self, dps: int = 30):
        with mpmath.workdps(dps):
            return self.whole + to_mpf(self.frac)

    def __lt__(self, other: "SpectrumPoint") -> bool:
        if self.whole != other.whole:
            return self.whole < other.whole
        return compare(self.frac, other.frac) < 0

    def __str__(self) -> str:
        return f"{self.whole} + {format_exact(self.frac)}"


def rho(x) -> SpectrumPoint:
    """2 + 1/x for x in E; 1/x = a_1 + G(x) gives the exact split."""
    x = to_exact(x)
    if x.is_rational:
        raise ValueError("rho needs an irrational point of E (x = 0 excluded)")
    if not in_E(x):
        raise ValueError(f"{x} is not in E")
    return SpectrumPoint(2 + x.digit(0), tail(x, 1))


def recurrence_quotient(alpha) -> SpectrumPoint:
    """2 + limsup_k [a_k; a_{k-1}, ..., a_1] for an eventually periodic slope."""
    alpha = to_exact(alpha)
    if alpha.is_rational:
        raise ValueError("slope must be irrational")
    P = alpha.per
    best = None
    for j in range(len(P)):
        # along k = j mod |P| the reversed expansion tends to a purely
        # periodic number whose period is P read backwards from position j
        rev = tuple(P[(j - i) % len(P)] for i in range(1, len(P) + 1))
        cand = SpectrumPoint(2 + P[j], periodic(rev))
        if best is None or best < cand:
            best = cand
    return best


def section_dim(N: int, effort: int = 6) -> Enclosure:
    """dim of R intersected with [N+2, N+3], which equals dim B_N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return dim_estimate(Fraction(1, N + 1), "B", effort)


def sturmian_prefix(alpha, length: int) -> List[int]:
    """S_{alpha,0}(n) = floor(alpha (n+1)) - floor(alpha n), n = 0..length-1."""
    alpha = to_exact(alpha)
    with mpmath.workdps(30 + len(str(length))):
        a = to_mpf(alpha)
        fl = [int(mpmath.floor(a * n)) for n in range(length + 1)]
    return [fl[n + 1] - fl[n] for n in range(length)]


def recurrence_function(X: List[int], n: int) -> int:
    """R_X(n) computed on the finite word X (factors seen in X only)."""
    s = "".join(map(str, X))
    target = {s[i:i + n] for i in range(len(s) - n + 1)}
    # smallest window m such that every window of length m contains all
    # n-factors: the longest stretch missing a factor, plus one
    worst = 0
    for f in target:
        pos = [i for i in range(len(s) - n + 1) if s.startswith(f, i)]
        gaps = [pos[0] + n] + [b - a + n for a, b in zip(pos, pos[1:])]
        gaps.append(len(s) - pos[-1])
        worst = max(worst, max(gaps))
    return min(worst, len(s) + 1)


def recurrence_demo(alpha, n_max: int = 64, length: int = 4000) -> List[Tuple[int, int, float]]:
    """Rows (n, R_X(n), R_X(n)/n) for the Sturmian word of slope alpha."""
    X = sturmian_prefix(alpha, length)
    return [(n, r, r / n) for n in range(1, n_max + 1)
            for r in [recurrence_function(X, n)]]
