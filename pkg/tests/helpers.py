"""Independent oracles and hypothesis strategies shared by the test modules.

The oracles here avoid the package's continuant and Moebius code: values are
computed by evaluating continued fractions from the tail inward, and regular
Cantor set dimensions from a Chebyshev discretisation of the transfer
operator.
"""
from fractions import Fraction

import mpmath
import numpy as np
from hypothesis import strategies as st

digit = st.integers(min_value=1, max_value=9)
word = st.lists(digit, min_size=1, max_size=8).map(tuple)
word0 = st.lists(digit, min_size=0, max_size=8).map(tuple)
small_word = st.lists(st.integers(1, 4), min_size=1, max_size=5).map(tuple)


@st.composite
def quad(draw, max_digit=9, max_pre=4, max_per=4):
    from bifset.cf import quadratic
    pre = tuple(draw(st.lists(st.integers(1, max_digit), max_size=max_pre)))
    per = tuple(draw(st.lists(st.integers(1, max_digit), min_size=1, max_size=max_per)))
    return quadratic(pre, per)


def cf_value(pre, per=(), terms=400, dps=60):
    """[0; pre, per, per, ...] evaluated backwards from a long truncation."""
    with mpmath.workdps(dps):
        digits = list(pre)
        if per:
            while len(digits) < terms:
                digits.extend(per)
        x = mpmath.mpf(0)
        for a in reversed(digits):
            x = 1 / (a + x)
        return x


def num_value(x, dps=60):
    return cf_value(x.pre, x.per, dps=dps)


def frac_cf_value(digits):
    x = Fraction(0)
    for a in reversed(digits):
        x = 1 / (a + x)
    return x


def brute_pseudocenter(lo: Fraction, hi: Fraction, qmax: int = 400) -> Fraction:
    for q in range(1, qmax + 1):
        p = lo.numerator * q // lo.denominator   # floor(lo * q)
        for cand in (p, p + 1, p + 2):
            f = Fraction(cand, q)
            if lo < f < hi:
                return f
    raise AssertionError("no rational found")


def _word_map(w, x):
    """f_w(x) = [0; w_1, ..., w_n + x] and |f_w'(x)|, built digit by digit."""
    y, der = x, 1.0
    for a in reversed(w):
        der *= 1.0 / (a + y) ** 2
        y = 1.0 / (a + y)
    return y, der


def transfer_dim(words, n=40, lo=0.0, hi=1.0):
    """dim K(A) as the zero of the pressure, with the leading eigenvalue of
    the transfer operator approximated by collocation at Chebyshev nodes."""
    k = np.arange(n)
    nodes = (lo + hi) / 2 + (hi - lo) / 2 * np.cos(np.pi * (k + 0.5) / n)

    def lagrange_row(x):
        row = np.empty(n)
        for j in range(n):
            others = np.delete(nodes, j)
            row[j] = np.prod((x - others) / (nodes[j] - others))
        return row

    images = []
    for x in nodes:
        images.append([_word_map(w, x) for w in words])
    rows = [[(lagrange_row(y), d) for y, d in img] for img in images]

    def radius(s):
        M = np.zeros((n, n))
        for i in range(n):
            for row, d in rows[i]:
                M[i] += d ** s * row
        return max(abs(np.linalg.eigvals(M)))

    a, b = 0.0, 1.0
    for _ in range(60):
        m = (a + b) / 2
        if radius(m) > 1:
            a = m
        else:
            b = m
    return (a + b) / 2
