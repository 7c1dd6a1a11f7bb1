"""Tuning operators tau_r, their windows [omega, alpha), and the
renormalization of points of E through maximal windows."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from .cf import (GT, LT, ZERO, ExactNumber, Interval, Word, as_word, compare,
                 from_digits, periodic, quadratic, rational, tail, to_exact,
                 word_matrix)
from .exceptional import ExtremalRational, extremal_rational, in_E
from .words import is_extremal

MAX_DEPTH = 32


class InfinitelyRenormalizable(RuntimeError):
    pass


@dataclass(frozen=True)
class TuningOperator:
    r: ExtremalRational

    @property
    def s0(self) -> Word:
        return self.r.s0

    @property
    def s1(self) -> Word:
        return self.r.s1

    @property
    def omega(self) -> ExactNumber:
        return quadratic(self.s1, self.s0)

    @property
    def alpha(self) -> ExactNumber:
        return periodic(self.s0)

    @property
    def window(self) -> Interval:
        return Interval(self.omega, self.alpha, True, False)

    def __str__(self) -> str:
        return f"tau_{self.r}"


def tuning_operator(r) -> TuningOperator:
    return TuningOperator(extremal_rational(r))


HALF = tuning_operator(Fraction(1, 2))


def tune_word(op: TuningOperator, S: Sequence[int]) -> Word:
    out: Tuple[int, ...] = ()
    for a in as_word(S):
        out += op.s1 + op.s0 * (a - 1)
    return out


def tune_number(op: TuningOperator, x) -> ExactNumber:
    x = to_exact(x)
    if x.is_rational:
        if x.fraction != 0:
            raise ValueError("tuning defined on irrationals and 0")
        return op.omega
    return quadratic(tune_word(op, x.pre), tune_word(op, x.per))


def _tail_after(x: ExactNumber, P: Word) -> ExactNumber:
    """y with x = P . y; P must be a prefix of one expansion of x."""
    if not x.is_rational:
        return tail(x, len(P))
    a, b, c, d = word_matrix(P).inverse()
    v = x.fraction
    return rational(Fraction(a * v + b, c * v + d))


def _prefix_candidates(x: ExactNumber):
    # prefixes of every expansion of x, shortest first
    if not x.is_rational:
        cap = len(x.pre) + 2 * len(x.per) + 2
        return [x.prefix(k) for k in range(1, cap + 1)]
    d = x.pre
    if not d:
        return []
    seen, out = set(), []
    expansions = [d] if d == (1,) else [d, d[:-1] + (d[-1] - 1, 1)]
    for e in expansions:
        for k in range(1, len(e) + 1):
            if e[:k] not in seen:
                seen.add(e[:k])
                out.append(e[:k])
    out.sort(key=len)
    return out


@lru_cache(maxsize=4096)
def maximal_window(x: ExactNumber) -> Optional[TuningOperator]:
    """The maximal tuning window containing x, if any.

    A window W_r = [omega, alpha) splits as S1 . [0, alpha] plus [r, alpha),
    the latter made of points S0 . y with y < alpha.  The pseudocenter of a
    window is r itself, so a larger window has a smaller denominator; hence
    scanning the prefixes of x by length finds the maximal one first.
    """
    x = to_exact(x)
    best = None
    for P in _prefix_candidates(x):
        v = from_digits(P).fraction
        if not 0 < v < 1 or best is not None and v.denominator >= best[0]:
            continue
        if len(P) % 2:
            s1 = P
            if not is_extremal(s1, strict=True):
                continue
            op = tuning_operator(v)
            y = _tail_after(x, P)
            inside = compare(y, op.alpha) != GT
        else:
            try:
                op = tuning_operator(v)
            except ValueError:
                continue
            if op.s0 != P:
                continue
            y = _tail_after(x, P)
            inside = compare(y, op.alpha) == LT
        if inside and x in op.window:
            if best is None or v.denominator < best[0]:
                best = (v.denominator, op)
    return best[1] if best else None


def untune(op: TuningOperator, x: ExactNumber) -> ExactNumber:
    """Inverse of tau_r on a point whose expansion is an S1/S0 concatenation."""
    x = to_exact(x)
    if x == op.omega:
        return ZERO
    if x.is_rational:
        raise ValueError("rational points other than omega are not tuned images")
    s0, s1 = op.s0, op.s1

    def matches(pos: int, w: Word) -> bool:
        return all(x.digit(pos + i) == w[i] for i in range(len(w)))

    def state(pos: int):
        if pos < len(x.pre):
            return ("pre", pos)
        return ("per", (pos - len(x.pre)) % len(x.per))

    digits: List[int] = []
    starts = {}
    pos = 0
    while True:
        st = state(pos)
        if st[0] == "per" and st in starts:
            k = starts[st]
            return quadratic(digits[:k], digits[k:])
        starts[st] = len(digits)
        if not matches(pos, s1):
            raise ValueError(f"{x} is not in the image of {op}")
        pos += len(s1)
        a = 1
        seen_in_run = set()
        while not matches(pos, s1):
            if not matches(pos, s0):
                raise ValueError(f"{x} is not in the image of {op}")
            s = state(pos)
            if s[0] == "per":
                if s in seen_in_run:
                    # endless run of S0: x = tau(S) . omega with S rational
                    if not digits:
                        return ZERO
                    raise ValueError(f"{x} is tau of a nonzero rational")
                seen_in_run.add(s)
            pos += len(s0)
            a += 1
        digits.append(a)


def renorm_decompose(x) -> Tuple[List[ExtremalRational], ExactNumber]:
    """Write x = tau_{r1}(tau_{r2}(... residual)) through maximal windows."""
    x = to_exact(x)
    if not in_E(x):
        raise ValueError(f"{x} is not in E")
    chain: List[ExtremalRational] = []
    y = x
    while True:
        op = maximal_window(y)
        if op is None:
            return chain, y
        if len(chain) >= MAX_DEPTH:
            raise InfinitelyRenormalizable(
                "infinitely renormalizable (Feigenbaum-type) point")
        chain.append(op.r)
        y = untune(op, y)


def retune(chain: Sequence[ExtremalRational], residual: ExactNumber) -> ExactNumber:
    """Apply the chain of tunings to the residual (inverse of renorm_decompose)."""
    y = residual
    for r in reversed(chain):
        y = tune_number(tuning_operator(r), y)
    return y


def cascade(r, n: int) -> List[ExactNumber]:
    """The period-doubling cascade tau_r(tau_{1/2}^k(g)), k = 0..n-1."""
    from .cf import GOLDEN
    op = tuning_operator(r)
    out = []
    y = GOLDEN
    for _ in range(n):
        out.append(tune_number(op, y))
        y = tune_number(HALF, y)
    return out
