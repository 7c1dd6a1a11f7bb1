import math
from fractions import Fraction
from itertools import product

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bifset.cf import cylinder, periodic, rational
from bifset.dims import (E_RAT, BetaAutomaton, CoverParams, EMPTY_STATE,
                         InvalidAlphabet, admissible_alphabet, alphabet, cover,
                         cover_count, dim_estimate, effort_params, ifs_dim,
                         sweep)
from bifset.exceptional import ell
from bifset.gaps import in_B
from helpers import transfer_dim

THIRD = Fraction(1, 3)
B2 = transfer_dim([(1,), (2,)])


def test_oracle_sanity():
    # the transfer operator oracle against the classical value for B_2
    assert abs(B2 - 0.5312805062772) < 1e-10


# -- alphabets and regular Cantor sets ------------------------------------

def test_alphabet_validation():
    A = alphabet([(1,), (2,)])
    assert A.validated and len(A) == 2
    alphabet([(2,), (2, 1, 1)])
    alphabet([(2,), (2, 1)])
    with pytest.raises(InvalidAlphabet):
        alphabet([(1,), (1, 1)])
    with pytest.raises(InvalidAlphabet):
        alphabet([])
    with pytest.raises(InvalidAlphabet):
        alphabet([()])


def test_ifs_dim_depth_one():
    e = ifs_dim(alphabet([(1,), (2,)]), 1)
    s = mpmath.findroot(lambda s: 4 ** -s + 9 ** -s - 1, 0.4)
    assert abs(e.lo - s) < 1e-5
    assert e.hi == 1


def test_ifs_dim_depth_twelve_contains_B2():
    e = ifs_dim(alphabet([(1,), (2,)]), 12)
    assert B2 in e
    assert e.width < 0.5
    e = ifs_dim(alphabet([(1,), (2,)]), 12, hull="auto")
    assert B2 in e and e.width < 0.02


def test_ifs_dim_two_word_alphabet():
    # A_1 = {Z_1, Z_2}: compare with log(phi)/(log q_2 +- log 2), q_2 = 5
    lphi = math.log((1 + math.sqrt(5)) / 2)
    lo, hi = lphi / (math.log(5) + math.log(2)), lphi / (math.log(5) - math.log(2))
    e = ifs_dim(alphabet([(2, 1, 1), (2,)]), 8, hull="auto")
    assert lo <= e.lo and e.hi <= hi
    assert transfer_dim([(2, 1, 1), (2,)], lo=0.3, hi=0.5) in e


@pytest.mark.parametrize("words", [[(1,), (2,)], [(1,), (2,), (3,)], [(2,), (2, 1, 1)], [(1, 2), (2, 1), (2, 2)]])
def test_ifs_dim_nesting(words):
    A = alphabet(words)
    prev = None
    for d in range(1, 9):
        e = ifs_dim(A, d, hull="auto")
        if prev is not None:
            assert prev.lo <= e.lo and e.hi <= prev.hi
        prev = e
    assert transfer_dim(words) in prev


# -- the automaton --------------------------------------------------------

@settings(max_examples=500)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=5).map(tuple),
       st.sampled_from([(2, 1), (2, 1, 1, 1), (3, 1), (2,), (2, 1, 1, 2, 2)]))
def test_automaton_accepts_exactly_B(S, beta_word):
    beta = periodic(beta_word)
    auto = BetaAutomaton(beta)
    # the periodic point [0; S S ...] is in B(beta) iff S repeated is accepted
    st_ = auto.run(EMPTY_STATE, S * 12)
    assert (st_ is not None) == in_B(periodic(S), beta)


# -- covers ---------------------------------------------------------------

def test_cover_examples():
    assert cover(rational(Fraction(1, 2)), CoverParams(2)) == {(1, 1, 1)}
    assert cover(rational(Fraction(7, 10)), CoverParams(3)) == set()
    ws = cover(rational(THIRD), CoverParams(3))
    assert ws and all(max(w) <= 2 for w in ws)
    with pytest.raises(ValueError):
        CoverParams(0.5)
    with pytest.raises(ValueError):
        CoverParams(2, depth_cap=0)


@pytest.mark.parametrize("t,r", [(THIRD, 6), (Fraction(3, 10), 5), (Fraction(37, 100), 8)])
def test_cover_cut_and_tiling(t, r):
    ws = sorted(cover(rational(t), CoverParams(r)), key=lambda w: cylinder(w).lo)
    T = E_RAT ** r
    for w in ws:
        L = cylinder(w)
        size = L.hi.fraction - L.lo.fraction
        assert size <= 1 / T
        if len(w) > 1:
            P = cylinder(w[:-1])
            assert P.hi.fraction - P.lo.fraction > 1 / T
    for a, b in zip(ws, ws[1:]):
        assert cylinder(a).hi.fraction <= cylinder(b).lo.fraction


@pytest.mark.parametrize("t", [THIRD, Fraction(37, 100)])
def test_cover_contains_B(t):
    te = rational(t)
    ws = cover(te, CoverParams(6))
    n = 0
    for k in range(1, 7):
        for S in product((1, 2), repeat=k):
            x = periodic(S)
            if in_B(x, te):
                assert any(x.prefix(len(w)) == w for w in ws)
                n += 1
    assert n > 10


def test_cover_subadditivity():
    t = rational(THIRD)
    c_t = float(THIRD) ** 2 / (2 * (1 + float(THIRD)) ** 2)
    N = {r: cover_count(t, r) for r in range(1, 13)}
    slack = math.log(2 / c_t)
    for r1 in range(1, 7):
        for r2 in range(1, 13 - r1):
            assert math.log(N[r1 + r2]) <= math.log(N[r1]) + math.log(N[r2]) + slack


# -- admissible alphabets -------------------------------------------------

@pytest.mark.parametrize("t", [THIRD, Fraction(37, 100), Fraction(1, 4)])
def test_admissible_alphabet_inside_B(t):
    beta = ell(rational(t))
    words, L = admissible_alphabet(beta, 5)
    assert words
    for a in words[:12]:
        for b in words[:12]:
            assert in_B(periodic(a + b), beta)


# -- dimension estimates --------------------------------------------------

def test_dim_examples():
    e = dim_estimate(rational(Fraction(1, 2)), "B", 4)
    assert e.lo == 0 and e.hi <= 0.05
    e = dim_estimate(rational(Fraction(45, 100)), "E", 4)
    assert e.lo == 0 and e.hi <= 0.05
    e = dim_estimate(rational(Fraction(7, 10)), "B", 4)
    assert e.lo == 0 and e.hi == 0
    with pytest.raises(ValueError):
        dim_estimate(rational(THIRD), "X", 4)
    with pytest.raises(ValueError):
        effort_params(0)


def test_dim_B2():
    e = dim_estimate(rational(THIRD), "B", 6)
    assert B2 in e and e.width <= 0.05


def test_dim_B3():
    b3 = transfer_dim([(1,), (2,), (3,)])
    e = dim_estimate(rational(Fraction(1, 4)), "B", 5)
    assert b3 in e and e.width <= 0.05


@pytest.mark.parametrize("t", [THIRD, Fraction(37, 100), Fraction(1, 4)])
def test_dim_nesting_in_effort(t):
    prev = None
    for eff in range(1, 7):
        e = dim_estimate(rational(t), "B", eff)
        if prev is not None:
            assert prev.lo <= e.lo and e.hi <= prev.hi
        prev = e


@pytest.mark.parametrize("t", [THIRD, Fraction(36, 100), Fraction(45, 100), Fraction(38, 100)])
def test_B_and_E_overlap(t):
    b = dim_estimate(rational(t), "B", 5)
    e = dim_estimate(rational(t), "E", 5)
    assert b.overlaps(e)
    assert e.lo <= b.hi


def test_monotone_in_t():
    grid = [Fraction(k, 100) for k in range(25, 45, 2)]
    encs = [dim_estimate(rational(t), "B", 4) for t in grid]
    for i, a in enumerate(encs):
        for b in encs[i:]:
            assert a.hi >= b.lo


def test_sweep_examples():
    rows = sweep(Fraction(35, 100), Fraction(37, 100), 8, "B", 4)
    near = [r for r in rows if abs(float(r.t) - 0.36) < 0.006]
    assert all(r.hi > 0.4 for r in near)
    assert rows[-1].hi < min(r.hi for r in near)
    rows = sweep(Fraction(38, 100), Fraction(39, 100), 10, "B", 4)
    assert min(r.hi for r in rows) <= 0.05
    rows = sweep(Fraction(43, 100), Fraction(57, 100), 4, "B", 4)
    inside = [r for r in rows if 0.42265 < float(r.t) < 0.57735]
    assert len(inside) >= 2
    assert len({(r.ell, r.lo, r.hi) for r in inside}) == 1
    with pytest.raises(ValueError):
        sweep(Fraction(1, 2), Fraction(1, 3), 4)


def test_sweep_monotone_and_plateaus():
    rows = sweep(Fraction(35, 100), Fraction(39, 100), 16, "B", 4)
    for a, b in zip(rows, rows[1:]):
        assert b.hi <= a.hi and b.lo <= a.lo
        if a.ell == b.ell:
            assert (a.lo, a.hi) == (b.lo, b.hi)
