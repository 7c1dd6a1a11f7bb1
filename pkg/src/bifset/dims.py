"""Hausdorff dimension enclosures: regular Cantor sets K(A), cylinder covers
of B(t), and dimension estimates for B(t) and E(t)."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from .cf import (GOLDEN, GT, ONE, ExactNumber, Word, apply_word, as_word,
                 compare, to_exact, word_matrix)
from .enclosure import Enclosure
from .exceptional import ell
from .tuning import InfinitelyRenormalizable, renorm_decompose, tune_word, tuning_operator

log = logging.getLogger(__name__)

# fixed rational stand-in for e, so cover cuts are exact and reproducible
E_RAT = Fraction("2.718281828459045")
BISECT_TOL = 1e-6
BISECT_MAX = 80
MAX_PRODUCTS = 2_000_000
MAX_ALPHABET = 20_000
COVER_BUDGET = 400_000


class InvalidAlphabet(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    words: Tuple[Word, ...]
    validated: bool = False

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)


def alphabet(words: Iterable[Sequence[int]]) -> Alphabet:
    """Build and validate an alphabet.

    The maps of distinct words must send K(A) into cylinders with disjoint
    interiors.  When a word b = a + rest extends another word a, the images
    of a and b can only overlap if rest is compatible with the start of
    some word, so that case is checked explicitly; this admits sets such
    as {(2), (2,1,1)}.
    """
    ws = sorted({as_word(w) for w in words})
    if not ws or any(len(w) == 0 for w in ws):
        raise InvalidAlphabet("alphabet must be a nonempty set of nonempty words")
    if len({len(w) for w in ws}) == 1:
        return Alphabet(tuple(ws), True)
    for i, a in enumerate(ws):
        for b in ws[i + 1:]:
            if b[: len(a)] != a:
                break
            rest = b[len(a):]
            for v in ws:
                m = min(len(v), len(rest))
                if v[:m] == rest[:m]:
                    raise InvalidAlphabet(f"cylinders of {a} and {b} overlap")
    return Alphabet(tuple(ws), True)


# -- regular Cantor sets ------------------------------------------------------

def _base_arrays(words: Sequence[Word]):
    """Per word: log d and the ratios a/d, b/d, c/d of its matrix."""
    n = len(words)
    logd, ra, rb, rc = (np.empty(n) for _ in range(4))
    for i, w in enumerate(words):
        a, b, c, d = word_matrix(w)
        logd[i] = math.log(d)
        ra[i], rb[i], rc[i] = a / d, b / d, c / d
    return logd, ra, rb, rc


def _concat(X, Y):
    """All products W1 W2 with W1 from X and W2 from Y (outer product)."""
    l1, a1, b1, c1 = (v[:, None] for v in X)
    l2, a2, b2, c2 = (v[None, :] for v in Y)
    den = 1.0 + c1 * b2
    out = (l1 + l2 + np.log(den),
           (a1 * a2 + b1 * c2) / den,
           (a1 * b2 + b1) / den,
           (c1 * a2 + c2) / den)
    return tuple(v.ravel() for v in out)


def _log_denominators(arrs, x: float) -> np.ndarray:
    """log(q + q' x) for every word: the contraction of f_W at x is its -2 power."""
    logd, _, _, rc = arrs
    return logd + np.log1p(rc * x)


def _solve_pressure(lam: np.ndarray) -> Tuple[float, float]:
    """Bracket [s_lo, s_hi] of the root of sum exp(-2 s lam) = 1 in [0, 1]."""
    def phi(s):
        v = -2.0 * s * lam
        m = v.max()
        return m + math.log(np.exp(v - m).sum())

    if len(lam) == 0:
        return 0.0, 0.0
    if phi(0.0) <= 0:
        return 0.0, 0.0
    if phi(1.0) >= 0:
        return 1.0, 1.0
    lo, hi = 0.0, 1.0
    for _ in range(BISECT_MAX):
        if hi - lo <= BISECT_TOL:
            break
        mid = (lo + hi) / 2
        if phi(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi


def auto_hull(A: Alphabet, iterations: int = 200) -> Tuple[float, float]:
    """Outer approximation of the convex hull of K(A): iterate the images
    of [0, 1] under the alphabet maps."""
    mats = [word_matrix(w) for w in A]
    lo, hi = 0.0, 1.0
    for _ in range(iterations):
        vals = []
        for a, b, c, d in mats:
            vals.append((a * lo + b) / (c * lo + d))
            vals.append((a * hi + b) / (c * hi + d))
        nlo = max(lo, min(vals) - 1e-12)
        nhi = min(hi, max(vals) + 1e-12)
        if abs(nlo - lo) < 1e-14 and abs(nhi - hi) < 1e-14:
            break
        lo, hi = nlo, nhi
    return max(0.0, lo), min(1.0, hi)


def ifs_dim(A, depth: int, hull=None) -> Enclosure:
    """Enclosure of dim K(A) from all |A|^depth concatenations.

    The lower bound uses the smallest contraction of each composed map on
    the hull, the upper bound the largest; bounds from shallower levels are
    intersected in, so raising ``depth`` never widens the result.  ``hull``
    is None for [0, 1], 'auto' for a computed hull of K(A), or a pair.
    """
    if not isinstance(A, Alphabet) or not A.validated:
        A = alphabet(A)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if hull is None:
        xmin, xmax = 0.0, 1.0
    elif hull == "auto":
        xmin, xmax = auto_hull(A)
    else:
        xmin, xmax = float(hull[0]), float(hull[1])
    base = _base_arrays(A.words)
    lo, hi = 0.0, 1.0
    level = base
    used = 0
    for k in range(1, depth + 1):
        if k > 1:
            if len(level[0]) * len(A) > MAX_PRODUCTS:
                break
            level = _concat(level, base)
        s_lo, _ = _solve_pressure(_log_denominators(level, xmax))
        _, s_hi = _solve_pressure(_log_denominators(level, xmin))
        lo, hi = max(lo, s_lo), min(hi, s_hi)
        used = k
    hi = max(hi, lo)
    return Enclosure(mpmath.mpf(lo), mpmath.mpf(hi),
                     {"depth": used, "requested_depth": depth, "size": len(A),
                      "hull": (xmin, xmax)})


# -- the beta automaton -------------------------------------------------------

class BetaAutomaton:
    """Tracks which suffixes of a digit string still agree with the expansion
    of beta.  A suffix that first differs from beta in the direction of
    smaller numbers is a tail below beta, and the string is rejected.  Match
    lengths are folded modulo an even period, so the state space is finite.
    """

    def __init__(self, beta: ExactNumber):
        if beta.is_rational:
            raise ValueError("beta must be irrational")
        self.beta = beta
        self.pre = len(beta.pre)
        self.period = len(beta.per) * (1 if len(beta.per) % 2 == 0 else 2)
        span = self.pre + self.period
        self.digits = [beta.digit(i) for i in range(span)]
        self.max_digit = self.digits[0]
        self._cache: Dict[Tuple[FrozenSet[int], int], Optional[FrozenSet[int]]] = {}

    def _norm(self, k: int) -> int:
        while k >= self.pre + self.period:
            k -= self.period
        return k

    def step(self, state: FrozenSet[int], a: int) -> Optional[FrozenSet[int]]:
        key = (state, a)
        if key in self._cache:
            return self._cache[key]
        nxt = set()
        res: Optional[FrozenSet[int]] = None
        for k in state | {0}:
            b = self.digits[k]
            if a == b:
                nxt.add(self._norm(k + 1))
            elif (a > b) == (k % 2 == 0):
                # first difference at an odd position with a larger digit,
                # or at an even position with a smaller one: tail < beta
                break
        else:
            res = frozenset(nxt)
        self._cache[key] = res
        return res

    def run(self, state: FrozenSet[int], word: Sequence[int]) -> Optional[FrozenSet[int]]:
        for a in word:
            state = self.step(state, a)
            if state is None:
                return None
        return state


EMPTY_STATE: FrozenSet[int] = frozenset()


# -- covers -------------------------------------------------------------------

@dataclass(frozen=True)
class CoverParams:
    r: float
    depth_cap: int = 64
    mode: str = "B"

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.depth_cap < 1:
            raise ValueError("depth_cap must be >= 1")
        if normalize_mode(self.mode) is None:
            raise ValueError(f"unknown mode {self.mode!r}")


def normalize_mode(mode: str) -> Optional[str]:
    m = str(mode).upper().replace("-SET", "")
    return m if m in ("B", "E") else None


def _threshold(r) -> int:
    """Smallest integer >= E_RAT^r; |I(S)| <= e^-r is read as q(q+q') >= it."""
    r = Fraction(r).limit_denominator(10 ** 6) if not isinstance(r, int) else Fraction(r)
    if r.denominator == 1:
        v = E_RAT ** r.numerator
        return -(-v.numerator // v.denominator)
    with mpmath.workdps(60):
        v = mpmath.power(mpmath.mpf(E_RAT.numerator) / E_RAT.denominator,
                         mpmath.mpf(r.numerator) / r.denominator)
        return int(mpmath.ceil(v))


@dataclass
class CoverResult:
    words: List[Word]
    qs: List[Tuple[int, int]]     # (q, q') per word
    truncated: int = 0            # words emitted at the depth cap


def _cover(beta: ExactNumber, r, depth_cap: int) -> CoverResult:
    auto = BetaAutomaton(beta)
    T = _threshold(r)
    res = CoverResult([], [])
    # node: (word, state, c, d) with (c, d) the bottom row of the word matrix
    stack = [((), EMPTY_STATE, 0, 1)]
    while stack:
        w, st, c, d = stack.pop()
        for a in range(auto.max_digit, 0, -1):
            st2 = auto.step(st, a)
            if st2 is None:
                continue
            c2, d2 = d, c + a * d
            w2 = w + (a,)
            if d2 * (d2 + c2) >= T or len(w2) >= depth_cap:
                if d2 * (d2 + c2) < T:
                    res.truncated += 1
                res.words.append(w2)
                res.qs.append((d2, c2))
                if len(res.words) > COVER_BUDGET:
                    raise OverflowError("cover exceeds node budget")
            else:
                stack.append((w2, st2, c2, d2))
    return res


def cover(t, p: CoverParams) -> set:
    """The cut set C(t, r): words S with I(S) possibly meeting B(t),
    |I(S)| <= e^-r and |I(parent)| > e^-r."""
    t = to_exact(t)
    if compare(t, GOLDEN) == GT:
        return set()
    if t.is_rational and t.fraction == 0:
        raise ValueError("t must be positive")
    return set(_cover(ell(t), p.r, p.depth_cap).words)


def cover_count(t, r, depth_cap: int = 64) -> int:
    return len(cover(t, CoverParams(r, depth_cap)))


def _pressure_upper(beta: ExactNumber, qs: List[Tuple[int, int]]) -> float:
    """s with sum over the cover of (q + q' beta)^(-2s) = 1: each word maps
    B(t) into itself with derivative at most (q + q' beta)^-2 there."""
    if not qs:
        return 0.0
    b = float(beta.mpf(30)) * (1 - 1e-12)
    lam = np.array([math.log(q) + math.log1p(qp / q * b) for q, qp in qs])
    return _solve_pressure(lam)[1]


# -- admissible sub-alphabets -------------------------------------------------

def _words_of_length(auto: BetaAutomaton, L: int, cap: int) -> Optional[Dict[Word, FrozenSet[int]]]:
    out: Dict[Word, FrozenSet[int]] = {}
    stack = [((), EMPTY_STATE)]
    while stack:
        w, st = stack.pop()
        for a in range(1, auto.max_digit + 1):
            st2 = auto.step(st, a)
            if st2 is None:
                continue
            if len(w) + 1 == L:
                out[w + (a,)] = st2
                if len(out) > cap:
                    return None
            else:
                stack.append((w + (a,), st2))
    return out


def admissible_alphabet(beta: ExactNumber, L: int, cap: int = MAX_ALPHABET) -> Tuple[List[Word], int]:
    """Words of length <= L whose every infinite concatenation stays in B(beta).

    Starts from all length-L words the automaton accepts and removes words
    until the set of automaton states reachable at word boundaries is closed
    and conflict-free (a fixpoint).  Returns (words, L actually used).
    """
    auto = BetaAutomaton(beta)
    while L >= 1:
        cand = _words_of_length(auto, L, cap)
        if cand is not None:
            break
        L -= 1
    else:
        return [], 0
    words = set(cand)
    while words:
        # boundary states reachable from the empty state
        ends: Dict[FrozenSet[int], set] = {EMPTY_STATE: set()}
        frontier = [EMPTY_STATE]
        conflicts: Dict[FrozenSet[int], set] = {}
        while frontier:
            st = frontier.pop()
            for w in words:
                e = auto.run(st, w)
                if e is None:
                    conflicts.setdefault(st, set()).add(w)
                    continue
                if e not in ends:
                    ends[e] = set()
                    frontier.append(e)
                ends[e].add(w)
        if not conflicts:
            break
        remove = set()
        for st, bad in conflicts.items():
            producers = ends.get(st, set())
            # drop whichever side of the conflict is smaller
            remove |= producers if 0 < len(producers) < len(bad) else bad
        words -= remove
    return sorted(words), L


# -- dimension estimates ------------------------------------------------------

@dataclass(frozen=True)
class EffortParams:
    effort: int
    r: int
    L: int
    depth_cap: int = 64


def effort_params(effort: int) -> EffortParams:
    """effort e -> cover scale r = e + 6 and word length L = e + 2."""
    if effort < 1:
        raise ValueError("effort must be >= 1")
    return EffortParams(effort, effort + 6, effort + 2)


def _alphabet_lower(words: List[Word], trusted: bool = False) -> float:
    if not words:
        return 0.0
    # tuning is injective and increasing, so it carries a valid alphabet to
    # a valid one; such alphabets skip the pairwise check
    A = Alphabet(tuple(sorted(set(words))), True) if trusted else alphabet(words)
    depth = 2 if len(A) ** 2 <= MAX_PRODUCTS else 1
    return float(ifs_dim(A, depth, hull="auto").lo)


def _cover_with_budget(beta: ExactNumber, ep: EffortParams) -> Tuple[CoverResult, int]:
    r = ep.r
    while True:
        try:
            return _cover(beta, r, ep.depth_cap), r
        except OverflowError:
            if r <= 2:
                raise
            r -= 1


def _image_upper(y: ExactNumber, chain, ep: EffortParams) -> float:
    """Upper bound for dim tau_chain(B(y)).

    Every point of B(y) is S . v with S in the cover and v in B(y); tuning
    turns this into tau(S) . tau(v), and tau(v) >= tau(y) bounds the
    derivative of each tuned word map.
    """
    if y == GOLDEN:
        return 0.0     # B(g) is the single point g
    cov, _ = _cover_with_budget(y, ep)
    if not chain:
        return _pressure_upper(y, cov.qs)
    ops = [tuning_operator(r) for r in reversed(chain)]
    low = y
    qs = []
    for w in cov.words:
        for op in ops:
            w = tune_word(op, w)
        _, _, c, d = word_matrix(w)
        qs.append((d, c))
    from .tuning import tune_number
    for op in ops:
        low = tune_number(op, low)
    return _pressure_upper(low, qs)


def _tuned_upper(beta: ExactNumber, ep: EffortParams) -> Optional[float]:
    """Upper bound through dim B(tau_r(x)) = max(dim B(alpha), dim tau_r B(x)),
    unfolded along the renormalization chain of beta."""
    try:
        chain, u = renorm_decompose(beta)
    except InfinitelyRenormalizable:
        return None
    if not chain:
        return None
    terms = [_image_upper(tuning_operator(r).alpha, chain[:i], ep)
             for i, r in enumerate(chain)]
    terms.append(_image_upper(u, chain, ep))
    return max(terms)


def _upper_bound(beta: ExactNumber, ep: EffortParams) -> Tuple[float, dict]:
    cov, r = _cover_with_budget(beta, ep)
    n = len(cov.words)
    count_bound = math.log(n) / float(r) if n > 1 else 0.0
    press = _pressure_upper(beta, cov.qs)
    tuned = _tuned_upper(beta, ep)
    bounds = [1.0, count_bound, press] + ([tuned] if tuned is not None else [])
    return min(bounds), {"r": r, "N": n, "truncated": cov.truncated,
                         "count_bound": count_bound, "pressure": press,
                         "tuned_bound": tuned}


def _b_lower(beta: ExactNumber, ep: EffortParams) -> Tuple[float, List[Word]]:
    words, _ = admissible_alphabet(beta, ep.L)
    if len(words) < 2:
        return 0.0, words
    return _alphabet_lower(words), words


def _embedded_alphabet(u: ExactNumber, ep: EffortParams, n_candidates: int = 3) -> List[Word]:
    """Alphabet A with S . K(A) inside E(u) for a dominant word S (u untuned)."""
    from .gaps import _witness_candidates
    if u == GOLDEN:
        return []
    best, best_val = [], 0.0
    tried = 0
    for S in _witness_candidates(u):
        z = apply_word(S, ONE)   # right end of the cylinder of S
        y = ell(z)
        words, _ = admissible_alphabet(y, ep.L)
        val = _alphabet_lower(words) if len(words) >= 2 else 0.0
        if val > best_val:
            best, best_val = words, val
        tried += 1
        if tried >= n_candidates:
            break
    return best


def _tune_words(words: List[Word], chain) -> List[Word]:
    out = words
    for r in reversed(chain):
        op = tuning_operator(r)
        out = [tune_word(op, w) for w in out]
    return out


def _e_lower(x: ExactNumber, ep: EffortParams) -> Tuple[float, dict]:
    try:
        chain, u = renorm_decompose(x)
    except InfinitelyRenormalizable:
        return 0.0, {"branch": "infinitely renormalizable"}
    best, info = 0.0, {"branch": None}
    # residual branch: E(x) contains the tuned image of E(u)
    words = _tune_words(_embedded_alphabet(u, ep), chain)
    if len(words) >= 2:
        v = _alphabet_lower(words, trusted=True)
        if v > best:
            best, info = v, {"branch": "residual", "chain": [str(r) for r in chain]}
    # root branches: E(tau_r(y)) contains E(alpha_r)
    for i, r in enumerate(chain):
        alpha = tuning_operator(r).alpha
        words = _tune_words(_embedded_alphabet(alpha, ep), chain[:i])
        if len(words) >= 2:
            v = _alphabet_lower(words, trusted=True)
            if v > best:
                best, info = v, {"branch": f"root {r}", "level": i}
    return best, info


def dim_estimate(t, mode: str = "B", effort: int = 6) -> Enclosure:
    """Enclosure of H.dim B(t) (mode 'B') or H.dim E(t) (mode 'E').

    The result at a given effort is intersected with the one at effort - 1,
    so raising the effort never widens the enclosure.
    """
    m = normalize_mode(mode)
    if m is None:
        raise ValueError(f"unknown mode {mode!r}")
    t = to_exact(t)
    ep = effort_params(effort)
    meta = {"t": t, "mode": m, "effort": effort, "r": ep.r, "L": ep.L}
    if compare(t, GOLDEN) == GT:
        return Enclosure(mpmath.mpf(0), mpmath.mpf(0), {**meta, "empty": True})
    if t.is_rational and t.fraction == 0:
        raise ValueError("t must be positive")
    beta = ell(t)
    if beta == GOLDEN:
        return Enclosure(mpmath.mpf(0), mpmath.mpf(0), {**meta, "single_point": True})
    lo, hi, info = _nested_estimate(beta, m, effort)
    meta.update(info)
    return Enclosure(mpmath.mpf(lo), mpmath.mpf(hi), meta)


@lru_cache(maxsize=1024)
def _nested_estimate(beta: ExactNumber, m: str, effort: int) -> Tuple[float, float, dict]:
    lo, hi, info = _estimate(beta, m, effort_params(effort))
    if effort > 1:
        plo, phi, _ = _nested_estimate(beta, m, effort - 1)
        lo, hi = max(lo, plo), min(hi, phi)
    return min(lo, hi), hi, info


def _estimate(beta: ExactNumber, m: str, ep: EffortParams) -> Tuple[float, float, dict]:
    hi, meta = _upper_bound(beta, ep)
    # E(t) = E(ell(t)) is contained in B(t): the upper bound is shared and
    # the E lower bound is also one for B
    lo, info = _e_lower(beta, ep)
    meta.update(info)
    if m == "B":
        lo_b, words = _b_lower(beta, ep)
        meta["alphabet_size"] = len(words)
        if lo_b >= lo:
            lo, meta["branch"] = lo_b, "admissible"
    return min(lo, hi), hi, meta


# -- sweeps -------------------------------------------------------------------

SWEEP_HEADER = "t,ell,dim_lo,dim_hi,effort,mode"


@dataclass(frozen=True)
class SweepRow:
    t: Fraction
    ell: Optional[ExactNumber]
    lo: float
    hi: float
    effort: int
    mode: str


def sweep(t_lo, t_hi, steps: int, mode: str = "B", effort: int = 6) -> List[SweepRow]:
    """Dimension enclosures on the grid t_lo + i (t_hi - t_lo)/steps, i = 0..steps.

    Rows sharing ell(t) share one computation, and since the dimension is
    non-increasing in t the bounds are tightened across the grid.
    """
    m = normalize_mode(mode)
    if m is None:
        raise ValueError(f"unknown mode {mode!r}")
    a, b = Fraction(to_exact(t_lo).fraction), Fraction(to_exact(t_hi).fraction)
    if not 0 < a < b <= 1:
        raise ValueError("need 0 < t_lo < t_hi <= 1")
    if steps < 1:
        raise ValueError("steps must be >= 1")
    ts = [a + (b - a) * i / steps for i in range(steps + 1)]
    cache: Dict[Optional[ExactNumber], Enclosure] = {}
    raw = []
    for t in ts:
        te = to_exact(t)
        key = None if compare(te, GOLDEN) == GT else ell(te)
        if key not in cache:
            cache[key] = dim_estimate(t if key is None else key, m, effort)
        enc = cache[key]
        raw.append((t, key, float(enc.lo), float(enc.hi)))
    his = [h for *_, h in raw]
    los = [l for *_, l, _ in raw]
    for i in range(1, len(his)):
        his[i] = min(his[i], his[i - 1])
    for i in range(len(los) - 2, -1, -1):
        los[i] = max(los[i], los[i + 1])
    return [SweepRow(t, key, min(lo, hi), hi, effort, m)
            for (t, key, _, _), lo, hi in zip(raw, los, his)]
