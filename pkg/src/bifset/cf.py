"""Exact continued-fraction arithmetic on eventually periodic expansions.

Numbers in [0, 1] are stored by their continued fraction digits: a rational
keeps its (canonical, finite) expansion, a quadratic irrational keeps a
preperiod and a nonempty period.  All comparisons are done on digit streams,
so nothing here ever touches floating point.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, NamedTuple, Optional, Sequence, Tuple, Union

import mpmath

Word = Tuple[int, ...]

LT, EQ, GT = -1, 0, 1


def as_word(digits: Iterable[int]) -> Word:
    w = tuple(int(a) for a in digits)
    for a in w:
        if a < 1:
            raise ValueError(f"digits must be positive integers, got {a}")
    return w


def parse_word(text: str) -> Word:
    """Parse a comma separated digit list such as ``"2,1,1"``."""
    text = text.strip().strip("()")
    if not text:
        return ()
    return as_word(int(tok) for tok in text.split(","))


def format_word(w: Sequence[int]) -> str:
    return ",".join(str(a) for a in w)


# -- Moebius maps -------------------------------------------------------------

class Mobius(NamedTuple):
    """The 2x2 integer matrix ``[[a, b], [c, d]]`` acting by ``x -> (ax+b)/(cx+d)``."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, other: "Mobius") -> "Mobius":
        a, b, c, d = self
        e, f, g, h = other
        return Mobius(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def __call__(self, x: Fraction) -> Fraction:
        return Fraction(self.a * x + self.b, self.c * x + self.d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "Mobius":
        # inverse up to the scalar det = +-1, which the action ignores
        a, b, c, d = self
        return Mobius(d, -b, -c, a)


IDENTITY = Mobius(1, 0, 0, 1)


def word_matrix(S: Sequence[int]) -> Mobius:
    """Product of ``[[0, 1], [1, a_i]]`` over the digits of ``S``."""
    a, b, c, d = 1, 0, 0, 1
    for x in S:
        a, b, c, d = b, a + x * b, d, c + x * d
    return Mobius(a, b, c, d)


def eval_word(S: Sequence[int]) -> Tuple[int, int]:
    """Return ``(p, q)`` with ``p/q = [0; S]`` in lowest terms."""
    if not S:
        raise ValueError("empty word has no rational value")
    m = word_matrix(as_word(S))
    return m.b, m.d


def q_of(S: Sequence[int]) -> int:
    """Denominator q(S) of [0; S]; q of the empty word is 1."""
    return word_matrix(S).d


# -- words under the alternate lexicographic order ----------------------------

def _alt_cmp_at(pos: int, a: float, b: float) -> int:
    # pos is 1-based; an odd position reverses the digit order
    if a == b:
        return EQ
    bigger = a > b
    if pos % 2:
        return LT if bigger else GT
    return GT if bigger else LT


def compare_words(S: Sequence[int], T: Sequence[int]) -> int:
    if len(S) != len(T):
        raise ValueError("compare_words needs words of equal length")
    for i, (a, b) in enumerate(zip(S, T)):
        if a != b:
            return _alt_cmp_at(i + 1, a, b)
    return EQ


def word_ll(S: Sequence[int], T: Sequence[int]) -> bool:
    """``S << T``: some common-length truncations are strictly ordered S < T."""
    for i, (a, b) in enumerate(zip(S, T)):
        if a != b:
            return _alt_cmp_at(i + 1, a, b) == LT
    return False


# -- exact numbers ------------------------------------------------------------

def _primitive_root(w: Word) -> Word:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


def _cf_digits(x: Fraction) -> Word:
    if not 0 <= x <= 1:
        raise ValueError(f"value {x} outside [0, 1]")
    if x == 0:
        return ()
    if x == 1:
        return (1,)
    p, q = x.numerator, x.denominator
    out = []
    while p:
        a, r = divmod(q, p)
        out.append(a)
        q, p = p, r
    return tuple(out)


@total_ordering
@dataclass(frozen=True)
class ExactNumber:
    """A point of [0, 1] given by an eventually periodic continued fraction.

    Build instances with :func:`rational`, :func:`quadratic` or :func:`parse`;
    those return the canonical form, on which equality is structural.
    An empty ``per`` means the number is rational and ``pre`` is its
    canonical expansion (last digit >= 2, except ``1 = [0; 1]``).
    """

    pre: Word
    per: Word = ()

    @property
    def is_rational(self) -> bool:
        return not self.per

    @property
    def fraction(self) -> Fraction:
        if self.per:
            raise ValueError("quadratic irrational has no exact rational value")
        if not self.pre:
            return Fraction(0)
        p, q = eval_word(self.pre)
        return Fraction(p, q)

    def digit(self, i: int) -> Optional[int]:
        """0-based digit ``a_{i+1}``; None past the end of a rational."""
        if i < len(self.pre):
            return self.pre[i]
        if not self.per:
            return None
        return self.per[(i - len(self.pre)) % len(self.per)]

    def prefix(self, n: int) -> Word:
        out = []
        for i in range(n):
            a = self.digit(i)
            if a is None:
                break
            out.append(a)
        return tuple(out)

    @property
    def n_tails(self) -> int:
        """Number of distinct Gauss tails (the orbit length for quadratics)."""
        return len(self.pre) + len(self.per)

    def __lt__(self, other):
        if not isinstance(other, ExactNumber):
            other = to_exact(other)
        return compare(self, other) == LT

    def __str__(self) -> str:
        return format_exact(self)

    def __repr__(self) -> str:
        return f"ExactNumber({format_exact(self)})"

    def mpf(self, dps: int = 30):
        with mpmath.workdps(dps + 10):
            return +to_mpf(self)


Numberish = Union[ExactNumber, Fraction, int, str]


def rational(x) -> ExactNumber:
    x = Fraction(x)
    return ExactNumber(_cf_digits(x), ())


def from_digits(digits: Sequence[int]) -> ExactNumber:
    """Rational [0; digits] in canonical form (any valid expansion accepted)."""
    digits = as_word(digits)
    if not digits:
        return ExactNumber((), ())
    p, q = eval_word(digits)
    return rational(Fraction(p, q))


def quadratic(pre: Sequence[int], per: Sequence[int]) -> ExactNumber:
    pre, per = as_word(pre), as_word(per)
    if not per:
        return from_digits(pre)
    per = _primitive_root(per)
    while pre and pre[-1] == per[-1]:
        pre = pre[:-1]
        per = per[-1:] + per[:-1]
    return ExactNumber(pre, per)


def periodic(S: Sequence[int]) -> ExactNumber:
    """The purely periodic point [0; S S S ...]."""
    if not S:
        raise ValueError("period must be nonempty")
    return quadratic((), S)


ZERO = rational(0)
ONE = rational(1)
GOLDEN = periodic((1,))  # g = (sqrt5 - 1)/2


def to_exact(x: Numberish) -> ExactNumber:
    if isinstance(x, ExactNumber):
        return x
    if isinstance(x, str):
        return parse(x)
    return rational(Fraction(x))


def compare(x: ExactNumber, y: ExactNumber) -> int:
    """Exact three-way comparison of two points of [0, 1]."""
    if x.per and y.per:
        bound = max(len(x.pre), len(y.pre)) + len(x.per) + len(y.per)
    else:
        bound = max(len(x.pre), len(y.pre)) + 1
    inf = float("inf")
    for i in range(bound + 1):
        a, b = x.digit(i), y.digit(i)
        if a is None and b is None:
            return EQ
        a = inf if a is None else a
        b = inf if b is None else b
        if a != b:
            return _alt_cmp_at(i + 1, a, b)
    # Fine-Wilf: agreement on this window forces identical sequences
    return EQ


def apply_word(S: Sequence[int], x: ExactNumber) -> ExactNumber:
    """``S . x``: prepend the digits of S to the expansion of x."""
    S = as_word(S)
    if not S:
        return x
    if x.is_rational:
        return rational(word_matrix(S)(x.fraction))
    return quadratic(S + x.pre, x.per)


def gauss_step(x: ExactNumber) -> ExactNumber:
    if x.is_rational:
        v = x.fraction
        if v == 0:
            return x
        inv = 1 / v
        return rational(inv - (inv.numerator // inv.denominator))
    if x.pre:
        return ExactNumber(x.pre[1:], x.per)
    return ExactNumber((), x.per[1:] + x.per[:1])


def tail(x: ExactNumber, k: int) -> ExactNumber:
    """``G^k(x)``."""
    for _ in range(k):
        x = gauss_step(x)
    return x


def tails(x: ExactNumber):
    """All distinct tails ``G^k(x)``, k >= 0 (for a rational: until 0)."""
    if x.is_rational:
        out = [x]
        while x.fraction != 0:
            x = gauss_step(x)
            out.append(x)
        return out
    out = []
    for _ in range(x.n_tails):
        out.append(x)
        x = gauss_step(x)
    return out


def farey_step(x: ExactNumber) -> ExactNumber:
    if x.is_rational:
        v = x.fraction
        if v == 0:
            return x
        return rational(v / (1 - v) if v < Fraction(1, 2) else (1 - v) / v)
    pre, per = x.pre, x.per
    if not pre:
        pre = per
    head = pre[0]
    rest = pre[1:]
    new_pre = ((head - 1,) + rest) if head > 1 else rest
    return quadratic(new_pre, per)


def cylinder(S: Sequence[int]) -> "Interval":
    """The closed cylinder I(S) with endpoints [0; S] and [0; S with a_n + 1]."""
    S = as_word(S)
    if not S:
        raise ValueError("empty word has no cylinder")
    a = from_digits(S)
    b = from_digits(S[:-1] + (S[-1] + 1,))
    lo, hi = (a, b) if a < b else (b, a)
    return Interval(lo, hi, True, True)


def cylinder_length(S: Sequence[int]) -> Fraction:
    m = word_matrix(S)
    return Fraction(1, m.d * (m.d + m.c))


# -- numerics -----------------------------------------------------------------

def to_mpf(x: ExactNumber):
    """Value of x at the current mpmath precision."""
    if x.is_rational:
        f = x.fraction
        return mpmath.mpf(f.numerator) / f.denominator
    a, b, c, d = word_matrix(x.per)
    # y = (a y + b)/(c y + d)  =>  c y^2 + (d - a) y - b = 0, positive root
    y = ((a - d) + mpmath.sqrt((a - d) ** 2 + 4 * b * c)) / (2 * c)
    A, B, C, D = word_matrix(x.pre)
    return (A * y + B) / (C * y + D)


def to_decimal(x: ExactNumber, digits: int = 12) -> str:
    """Round-to-nearest decimal string with ``digits`` places after the point."""
    if x.is_rational:
        n = round(x.fraction * 10 ** digits)
    else:
        with mpmath.workdps(digits + 20):
            n = int(mpmath.nint(to_mpf(x) * 10 ** digits))
    whole, frac = divmod(n, 10 ** digits)
    return f"{whole}.{frac:0{digits}d}"


# -- text form ----------------------------------------------------------------

def format_exact(x: ExactNumber) -> str:
    if x.is_rational:
        f = x.fraction
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    head = "".join(f"{a}," for a in x.pre)
    return f"[0;{head}({format_word(x.per)})]"


_CF_RE = re.compile(r"^\[\s*0\s*;\s*([0-9,\s]*?)\s*(?:\(\s*([0-9,\s]+?)\s*\))?\s*\]$")


def parse(text: str) -> ExactNumber:
    """Parse ``p/q``, a plain decimal, or ``[0;a1,a2,(b1,b2)]``."""
    s = text.strip()
    if s.startswith("["):
        m = _CF_RE.match(s)
        if not m:
            raise ValueError(f"cannot parse continued fraction {text!r}")
        pre = parse_word(m.group(1).rstrip(", ")) if m.group(1).strip(", ") else ()
        per = parse_word(m.group(2)) if m.group(2) else ()
        return quadratic(pre, per)
    try:
        value = Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"cannot parse number {text!r}") from None
    return rational(value)


# -- intervals ----------------------------------------------------------------

@dataclass(frozen=True)
class Interval:
    lo: ExactNumber
    hi: ExactNumber
    lo_closed: bool = False
    hi_closed: bool = False

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("interval with lo > hi")

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def __contains__(self, x) -> bool:
        x = to_exact(x)
        c_lo = compare(self.lo, x)
        c_hi = compare(x, self.hi)
        left_ok = c_lo == LT or (c_lo == EQ and self.lo_closed)
        right_ok = c_hi == LT or (c_hi == EQ and self.hi_closed)
        return left_ok and right_ok

    def contains_interval(self, other: "Interval") -> bool:
        c = compare(self.lo, other.lo)
        left = c == LT or (c == EQ and (self.lo_closed or not other.lo_closed))
        c = compare(other.hi, self.hi)
        right = c == LT or (c == EQ and (self.hi_closed or not other.hi_closed))
        return left and right

    def disjoint(self, other: "Interval") -> bool:
        a, b = (self, other) if not other.lo < self.lo else (other, self)
        c = compare(a.hi, b.lo)
        return c == LT or (c == EQ and not (a.hi_closed and b.lo_closed))

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}, {self.hi}{right}"
