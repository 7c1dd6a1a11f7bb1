from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bifset.cf import GT, LT, compare, compare_words, periodic, q_of, quadratic
from bifset.words import (SplitView, dominant_approximations, is_dominant,
                          is_extremal, prefix_suffixes, splittings, star_leq)
from helpers import small_word, word


def _all_words(max_digit, max_len):
    for n in range(1, max_len + 1):
        yield from product(range(1, max_digit + 1), repeat=n)


DOMINANT = [w for w in _all_words(4, 8) if len(w) % 2 == 0 and is_dominant(w)]
BORDERED_EXTREMAL = [w for w in _all_words(4, 7)
                     if is_extremal(w, strict=True) and prefix_suffixes(w)[0]]


def test_enumerations_nontrivial():
    assert len(DOMINANT) > 500
    assert len(BORDERED_EXTREMAL) > 100


# -- examples -------------------------------------------------------------

def test_is_extremal_examples():
    assert is_extremal((5, 2, 4, 5), strict=True)
    assert is_extremal((5, 2, 4, 3), strict=True)
    assert is_extremal((3,), strict=True)
    assert not is_extremal((1, 1), strict=True)
    assert is_extremal((1, 1), strict=False)


def test_is_dominant_examples():
    assert is_dominant((5, 2, 4, 3))
    assert not is_dominant((5, 2, 4, 5))
    assert is_dominant((2, 1))
    assert not is_dominant((2, 1, 1))   # odd length


def test_prefix_suffixes_examples():
    assert prefix_suffixes((5, 2, 4, 5)) == ({(5,)}, {(2, 4, 5)})
    assert prefix_suffixes((5, 2, 4, 3)) == (set(), set())
    assert prefix_suffixes((1, 2, 1)) == ({(1,)}, {(2, 1)})


def test_star_leq_examples():
    assert star_leq((1, 1), (2, 3))
    assert not star_leq((2,), (1, 1))
    assert star_leq((2, 1), (5, 2, 4, 3))
    assert star_leq((), (1,))


def test_splittings():
    parts = list(splittings((1, 2, 3)))
    assert parts == [SplitView((1,), (2, 3)), SplitView((1, 2), (3,))]
    with pytest.raises(ValueError):
        SplitView((), (1,))


def test_dominant_approximations_examples():
    assert dominant_approximations((2, 1), 1) == [(2, 1, 1, 1)]
    assert dominant_approximations((2, 1), 2)[1] == (2, 1, 2, 1, 1, 1)
    assert dominant_approximations((5, 2, 4, 3), 1) == [(5, 2, 4, 3, 1, 1)]
    with pytest.raises(ValueError, match="not a maximal-window root word"):
        dominant_approximations((1, 2), 1)
    with pytest.raises(ValueError, match="not a maximal-window root word"):
        dominant_approximations((2, 1, 1), 1)


def _maximal_roots(qmax):
    from bifset.cf import rational
    from bifset.exceptional import enumerate_extremal
    from bifset.tuning import maximal_window
    out = []
    for er in enumerate_extremal(qmax):
        op = maximal_window(rational(er.value))
        if op is not None and op.r == er and er.s0[0] != 1:
            out.append(er.s0)
    return out


def test_tuned_root_rejected():
    # (2,1,1,2) is tau_1/2 of (2,1): its root sits inside W_1/2
    with pytest.raises(ValueError, match="not a maximal-window root word"):
        dominant_approximations((2, 1, 1, 2), 1)


@pytest.mark.parametrize("S", [(2, 1), (5, 2, 4, 3), (3, 1), (3, 2)] + _maximal_roots(40))
def test_dominant_approximations_converge_from_right(S):
    ws = dominant_approximations(S, 6)
    x = periodic(S)
    pts = [periodic(w) for w in ws]
    assert all(is_dominant(w) for w in ws)
    assert all(compare(p, x) == GT for p in pts)
    assert all(compare(a, b) == GT for a, b in zip(pts, pts[1:]))


# -- properties -----------------------------------------------------------

@settings(max_examples=600)
@given(st.sampled_from(DOMINANT))
def test_dominant_implies_extremal(S):
    assert is_extremal(S, strict=True)


@settings(max_examples=500)
@given(st.lists(st.integers(1, 4), min_size=2, max_size=8).map(tuple))
def test_dominant_implies_extremal_random(S):
    if is_dominant(S):
        assert is_extremal(S, strict=True)


@settings(max_examples=600)
@given(st.sampled_from(BORDERED_EXTREMAL))
def test_borders_of_extremal_are_odd_and_extremal(S):
    ps, rs = prefix_suffixes(S)
    for Y in ps:
        assert len(Y) % 2 == 1
        assert is_extremal(Y, strict=True)
    assert {S[len(Y):] for Y in ps} == rs


@st.composite
def star_pair(draw):
    A = draw(word)
    B = []
    for a in A:
        B.extend(draw(st.lists(st.integers(1, 9), max_size=2)))
        B.append(a + draw(st.integers(0, 3)))
    B.extend(draw(st.lists(st.integers(1, 9), max_size=2)))
    return A, tuple(B)


@settings(max_examples=600)
@given(star_pair())
def test_star_leq_implies_q(pair):
    A, B = pair
    assert star_leq(A, B)
    assert q_of(A) <= q_of(B)


@settings(max_examples=500)
@given(word, word)
def test_star_leq_implies_q_random(A, B):
    if star_leq(A, B):
        assert q_of(A) <= q_of(B)


@settings(max_examples=500)
@given(star_pair(), star_pair())
def test_star_leq_concatenation(p1, p2):
    (A, B), (C, D) = p1, p2
    assert star_leq(A + C, B + D)


@settings(max_examples=500)
@given(word, word)
def test_star_leq_matches_brute_force(A, B):
    def brute(i, j):
        if i == len(A):
            return True
        return any(A[i] <= B[k] and brute(i + 1, k + 1) for k in range(j, len(B)))
    if len(A) <= 5 and len(B) <= 6:
        assert star_leq(A, B) == brute(0, 0)


@settings(max_examples=500)
@given(small_word, small_word)
def test_border_string_lemma(Y, Z):
    # [0; Y...] < [0; Z...] implies [0; Z, Y, Y, ...] > [0; Y, Y, ...]
    y, z = periodic(Y), periodic(Z)
    if compare(y, z) == LT:
        assert compare(quadratic(Z, Y), y) == GT


@settings(max_examples=500)
@given(small_word)
def test_extremal_definition_by_rotation(S):
    rots = [S[k:] + S[:k] for k in range(1, len(S))]
    strict = all(compare_words(S, R) == LT for R in rots)
    weak = all(compare_words(S, R) != GT for R in rots)
    assert is_extremal(S, strict=True) == strict
    assert is_extremal(S, strict=False) == weak
