"""Combinatorics of digit words: extremality, dominance, borders, and the
star order used to compare tuned strings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Set, Tuple

from .cf import (EQ, LT, Word, as_word, compare, compare_words, periodic,
                 word_ll)


@dataclass(frozen=True)
class SplitView:
    left: Word
    right: Word

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("both sides of a splitting must be nonempty")

    @property
    def word(self) -> Word:
        return self.left + self.right


def splittings(S: Sequence[int]):
    S = tuple(S)
    for k in range(1, len(S)):
        yield SplitView(S[:k], S[k:])


def is_extremal(S: Sequence[int], strict: bool = True) -> bool:
    """XY < YX (or <= when ``strict`` is False) for every splitting S = XY."""
    S = as_word(S)
    if not S:
        raise ValueError("empty word")
    for k in range(1, len(S)):
        c = compare_words(S, S[k:] + S[:k])
        if c != LT and (strict or c != EQ):
            return False
    return True


def is_dominant(S: Sequence[int]) -> bool:
    """Even length and XY << Y for every splitting S = XY."""
    S = as_word(S)
    if not S:
        raise ValueError("empty word")
    if len(S) % 2:
        return False
    return all(word_ll(S, S[k:]) for k in range(1, len(S)))


def prefix_suffixes(S: Sequence[int]) -> Tuple[Set[Word], Set[Word]]:
    """Proper borders PS(S) and the matching residual suffixes RS(S)."""
    S = as_word(S)
    ps, rs = set(), set()
    for k in range(1, len(S)):
        if S[:k] == S[-k:]:
            ps.add(S[:k])
            rs.add(S[k:])
    return ps, rs


def star_leq(A: Sequence[int], B: Sequence[int]) -> bool:
    """A <=* B: an increasing K with a_i <= b_K(i) exists (greedy matching)."""
    j = 0
    for a in A:
        while j < len(B) and B[j] < a:
            j += 1
        if j == len(B):
            return False
        j += 1
    return True


def _is_root_word(S: Word) -> bool:
    return len(S) % 2 == 0 and S[0] != 1


def dominant_approximations(S: Sequence[int], n_max: int) -> List[Word]:
    """Dominant words W_1, ..., W_n_max whose periodic points decrease to
    [0; S S ...] from the right.

    ``S`` must be an even-length extremal word not starting with 1 (the
    period of a maximal-window root).  For dominant ``S`` the words are
    ``S^n 1 1``; otherwise the root is approached through ``S^n T^m`` with
    ``T`` a dominant approximation of a shorter root.
    """
    S = as_word(S)
    if not S or not _is_root_word(S):
        raise ValueError("not a maximal-window root word")
    if n_max < 1:
        return []
    if is_dominant(S):
        out = [S * n + (1, 1) for n in range(1, n_max + 1)]
    else:
        if not is_extremal(S, strict=False):
            raise ValueError("not a maximal-window root word")
        from .tuning import maximal_window
        if maximal_window(periodic(S)) is not None:
            # the root of a tuned window: its right neighbourhood is tuned too
            raise ValueError("not a maximal-window root word")
        T = _inner_dominant(S)
        out = []
        for n in range(1, n_max + 1):
            for m in range(2, 65, 2):
                W = S * n + T * m
                if is_dominant(W):
                    out.append(W)
                    break
            else:
                raise ValueError(f"no dominant S^{n} T^m found with m <= 64")
    for W in out:
        assert is_dominant(W), W
    return out


def _inner_dominant(S: Word) -> Word:
    # local import: tuning depends on this module
    from .tuning import maximal_window
    from .cf import from_digits

    _, rs = prefix_suffixes(S)
    z_star = min(rs, key=periodic)
    z_min = periodic(z_star)
    y_star = S[: len(S) - len(z_star)]
    op = maximal_window(from_digits(y_star))
    if op is None:
        raise ValueError("border of a root word lies in no tuning window")
    P = op.s0
    if periodic(P) == periodic((1,)):
        candidates = [(1,)]
    else:
        candidates = dominant_approximations(P, 12)
    for T in candidates:
        prefix_ok = T == (1,) or T[: len(P)] == P
        if prefix_ok and word_ll(S, T) and compare(periodic(T), z_min) == LT:
            return T
    raise ValueError("no admissible inner dominant word found")


def is_power_of_common(S: Sequence[int], T: Sequence[int]) -> bool:
    """True iff S and T are powers of a common word (equivalently ST = TS)."""
    S, T = tuple(S), tuple(T)
    return S + T == T + S


__all__ = [
    "SplitView", "splittings", "is_extremal", "is_dominant", "prefix_suffixes",
    "star_leq", "dominant_approximations", "is_power_of_common", "EQ",
]
