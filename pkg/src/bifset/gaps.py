"""Anatomy of B(t) = {x : G^k(x) >= t for all k}: membership, t-labels and
the open gaps V_r of its complement."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .cf import (GOLDEN, GT, LT, ExactNumber, Interval, Word, apply_word,
                 compare, format_exact, periodic, rational, tails, to_decimal,
                 to_exact)
from .exceptional import EmptySetError, ell, expansions
from .tuning import renorm_decompose
from .words import dominant_approximations, is_dominant, is_extremal


def in_B(x, t) -> bool:
    x, t = to_exact(x), to_exact(t)
    if t.is_rational and t.fraction == 0:
        return True
    if x.is_rational:
        return False
    return all(compare(y, t) != LT for y in tails(x))


def running_time(r) -> int:
    """Number of Gauss steps taking the rational r to 0."""
    r = Fraction(r)
    if not 0 <= r <= 1:
        raise ValueError("running time needs a rational in [0, 1]")
    return len(rational(r).pre)


def _orbit(r: Fraction):
    out = []
    while r != 0:
        out.append(r)
        r = 1 / r
        r -= r.numerator // r.denominator
    return out


def _beta(t) -> ExactNumber:
    t = to_exact(t)
    if compare(t, GOLDEN) == GT:
        raise EmptySetError("B(t) empty for t > g")
    return ell(t)


def is_t_label(r, t) -> bool:
    beta = _beta(t)
    return all(compare(rational(s), beta) == GT for s in _orbit(Fraction(r)))


@dataclass(frozen=True)
class TLabel:
    r: Fraction
    S_minus: Word
    S_plus: Word
    running_time: int


@dataclass(frozen=True)
class Gap:
    label: TLabel
    interval: Interval

    @property
    def lo(self) -> ExactNumber:
        return self.interval.lo

    @property
    def hi(self) -> ExactNumber:
        return self.interval.hi


def _label(r: Fraction) -> TLabel:
    if r == 0:
        return TLabel(r, (), (), 0)
    if r == 1:
        return TLabel(r, (1,), (), 1)
    s0, s1 = expansions(r)
    return TLabel(r, s1, s0, running_time(r))


def t_labels(t, q_max: int) -> List[Fraction]:
    """All t-labels with denominator <= q_max, in increasing order.

    A label r = 1/(a + s) has G(r) = s, so labels are generated from 0 by
    prepending digits, keeping r > ell(t) at every step.
    """
    beta = _beta(t)
    found = {Fraction(0)}
    queue = deque([Fraction(0)])
    while queue:
        s = queue.popleft()
        a = 1
        while True:
            r = 1 / (a + s)
            if r.denominator > q_max or compare(rational(r), beta) != GT:
                break
            if r not in found:
                found.add(r)
                queue.append(r)
            a += 1
    return sorted(found)


def gaps(t, q_max: int) -> List[Gap]:
    """Gaps of B(t) generated by t-labels of denominator <= q_max, sorted."""
    if q_max < 1:
        raise ValueError("q_max must be positive")
    beta = _beta(t)
    out = []
    for r in t_labels(t, q_max):
        lab = _label(r)
        if r == 0:
            iv = Interval(rational(0), beta, True, False)
        elif r == 1:
            iv = Interval(apply_word((1,), beta), rational(1), False, True)
        else:
            lo = apply_word(lab.S_minus, beta)
            hi = apply_word(lab.S_plus, beta)
            iv = Interval(lo, hi, False, False)
        out.append(Gap(lab, iv))
    out.sort(key=lambda g: g.lo)
    return out


def gaps_csv_rows(gs: List[Gap]) -> List[List[str]]:
    rows = []
    for g in gs:
        r = g.label.r
        rows.append([str(r.numerator), str(r.denominator), str(g.label.running_time),
                     format_exact(g.lo), format_exact(g.hi),
                     to_decimal(g.lo, 12), to_decimal(g.hi, 12)])
    return rows


def isolated_points(t, q_max: int) -> List[ExactNumber]:
    """Points of B(t) that are endpoints of two adjacent enumerated gaps."""
    gs = gaps(t, q_max)
    out = []
    for a, b in zip(gs, gs[1:]):
        if a.hi == b.lo and in_B(a.hi, t):
            out.append(a.hi)
    return out


def _root_word(x: ExactNumber) -> Optional[Word]:
    if x.is_rational or x.pre:
        return None
    S = x.per
    if len(S) % 2:
        S = S + S
    if S[0] == 1 or not is_extremal(S, strict=False):
        return None
    return S


def _witness_candidates(x: ExactNumber, cap: int = 64):
    S = _root_word(x)
    if S is not None:
        try:
            yield from dominant_approximations(S, cap)
            return
        except ValueError:
            pass
    # generic untuned point: dominant words built on even prefixes of x
    for k in range(2, 2 * cap + 1, 2):
        P = x.prefix(k)
        for W in (P, P + (1, 1)):
            if is_dominant(W):
                yield W


def embed_witness(x, y) -> Optional[Word]:
    """A dominant word S with S . B(y) inside E(x), or None when x = g."""
    x, y = to_exact(x), to_exact(y)
    if x == GOLDEN and compare(x, y) == LT:
        return None
    if y.is_rational:
        raise ValueError("y must be irrational")
    if compare(x, y) != LT:
        raise ValueError("need x < y")
    chain, _ = renorm_decompose(x)
    if chain:
        raise ValueError(f"{x} is tuned")
    for S in _witness_candidates(x):
        z = periodic(S)
        if compare(x, z) == LT and compare(z, y) == LT and y.prefix(len(S)) != S:
            return S
    raise ValueError("no dominant witness found within the search cap")
