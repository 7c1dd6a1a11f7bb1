"""The bifurcation set E = {x : G^k(x) >= x for all k}: membership, the
quadratic intervals forming its complement, and the function ell(t)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .cf import (EQ, GOLDEN, GT, LT, ExactNumber, Interval, Word, compare,
                 periodic, rational, tails, to_exact)
from .words import is_extremal


class EmptySetError(ValueError):
    """B(t) is empty (t > g)."""


def expansions(r) -> Tuple[Word, Word]:
    """The even- and odd-length expansions ``(S0, S1)`` of r in (0, 1)."""
    r = Fraction(r)
    if not 0 < r < 1:
        raise ValueError("need a rational strictly between 0 and 1")
    d = rational(r).pre
    alt = d[:-1] + (d[-1] - 1, 1)
    return (d, alt) if len(d) % 2 == 0 else (alt, d)


@dataclass(frozen=True)
class ExtremalRational:
    value: Fraction
    s0: Word
    s1: Word

    def __str__(self) -> str:
        return f"{self.value.numerator}/{self.value.denominator}"


def extremal_rational(r) -> ExtremalRational:
    if isinstance(r, ExtremalRational):
        return r
    if isinstance(r, ExactNumber):
        r = r.fraction
    r = Fraction(r)
    s0, s1 = expansions(r)
    if not is_extremal(s1, strict=True):
        raise ValueError(f"{r} is not extremal")
    return ExtremalRational(r, s0, s1)


def is_extremal_rational(r) -> bool:
    r = Fraction(r)
    if not 0 < r < 1:
        return False
    return is_extremal(expansions(r)[1], strict=True)


@dataclass(frozen=True)
class QuadraticInterval:
    pseudocenter: ExtremalRational
    interval: Interval


def in_E(x) -> bool:
    x = to_exact(x)
    if x.is_rational:
        return x.fraction == 0
    return all(compare(y, x) != LT for y in tails(x))


def pseudocenter(I: Interval) -> Fraction:
    """Unique rational of minimal denominator in I, by Stern-Brocot descent."""
    if compare(I.lo, I.hi) != LT:
        raise ValueError("degenerate interval")
    for cand in (Fraction(0), Fraction(1)):
        if cand in I:
            return cand

    def side(f: Fraction) -> int:
        x = rational(f)
        c = compare(x, I.lo)
        if c == LT or (c == EQ and not I.lo_closed):
            return -1
        c = compare(x, I.hi)
        if c == GT or (c == EQ and not I.hi_closed):
            return 1
        return 0

    a, b, c, d = 0, 1, 1, 1   # left a/b, right c/d
    while True:
        s = side(Fraction(a + c, b + d))
        if s == 0:
            return Fraction(a + c, b + d)
        if s < 0:
            # advance the left end as far as it stays below the interval
            k = _gallop(lambda k: side(Fraction(a + k * c, b + k * d)) < 0)
            a, b = a + k * c, b + k * d
        else:
            k = _gallop(lambda k: side(Fraction(c + k * a, d + k * b)) > 0)
            c, d = c + k * a, d + k * b


def _gallop(pred) -> int:
    """Largest k >= 1 with pred(k), given pred(1) and pred monotone."""
    lo, hi = 1, 2
    while pred(hi):
        lo, hi = hi, hi * 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def quadratic_interval(r) -> QuadraticInterval:
    er = extremal_rational(r)
    iv = Interval(periodic(er.s1), periodic(er.s0), False, False)
    return QuadraticInterval(er, iv)


@lru_cache(maxsize=None)
def _gap_interval(r: Fraction) -> Optional[Interval]:
    if not is_extremal_rational(r):
        return None
    return quadratic_interval(r).interval


def stern_brocot_path(x: ExactNumber, max_steps: int = 10_000):
    """Yield the Stern-Brocot nodes in (0, 1) on the descent toward x."""
    a, b, c, d = 0, 1, 1, 1
    for _ in range(max_steps):
        m = Fraction(a + c, b + d)
        yield m
        cmp = compare(rational(m), x)
        if cmp == EQ:
            return
        if cmp == LT:
            a, b = a + c, b + d
        else:
            c, d = a + c, b + d
    raise RuntimeError("Stern-Brocot descent exceeded its step cap")


def gap_containing(x, max_steps: int = 10_000) -> Optional[ExtremalRational]:
    """The extremal r with x in I_r, or None when x lies in E or in (g, 1]."""
    x = to_exact(x)
    if in_E(x) or compare(x, GOLDEN) == GT:
        return None
    for m in stern_brocot_path(x, max_steps):
        iv = _gap_interval(m)
        if iv is not None and x in iv:
            return extremal_rational(m)
    raise RuntimeError(f"no gap of E found around {x}")


def ell(t) -> ExactNumber:
    """min B(t) = min(E cap [t, 1]), for t <= g."""
    t = to_exact(t)
    if compare(t, GOLDEN) == GT:
        raise EmptySetError("B(t) empty for t > g")
    if in_E(t):
        return t
    r = gap_containing(t)
    return periodic(r.s0)


def is_isolated_in_E(x) -> bool:
    x = to_exact(x)
    if not in_E(x):
        raise ValueError(f"{x} is not in E")
    return not x.is_rational and not x.pre and len(x.per) % 2 == 1


def enumerate_extremal(q_max: int) -> List[ExtremalRational]:
    """All extremal rationals with denominator <= q_max, in increasing order.

    Stern-Brocot traversal; a subtree whose whole range sits inside the gap of
    an ancestor cannot hold further extremal rationals and is skipped.
    """
    out = []
    # node = (left a/b, right c/d, gaps of extremal ancestors)
    stack = [(0, 1, 1, 1, ())]
    while stack:
        a, b, c, d, gaps = stack.pop()
        q = b + d
        if q > q_max:
            continue
        span = Interval(rational(Fraction(a, b)), rational(Fraction(c, d)))
        if any(g.contains_interval(span) for g in gaps):
            continue
        m = Fraction(a + c, q)
        iv = _gap_interval(m)
        if iv is not None:
            out.append(extremal_rational(m))
            gaps = gaps + (iv,)
        stack.append((a, b, a + c, q, gaps))
        stack.append((a + c, q, c, d, gaps))
    out.sort(key=lambda e: e.value)
    return out
