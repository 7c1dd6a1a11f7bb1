"""The period-doubling words Z_n, the enclosure of the Feigenbaum-type
point c_F, and the scaling law of the dimension near c_F."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import mpmath

from .cf import ExactNumber, Word, periodic, q_of, to_mpf
from .enclosure import Enclosure

N_MAX = 12
SCALING_N_MAX = 10
PHI = (mpmath.sqrt(5) + 1) / 2


@dataclass(frozen=True)
class ZData:
    n: int
    Z: Word
    q: int
    alpha: ExactNumber   # [0; (Z_{n+1} Z_n)]


@lru_cache(maxsize=None)
def z_word(n: int) -> Word:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > N_MAX + 1:
        raise ValueError("word length exceeds budget")
    if n == 0:
        return (1,)
    if n == 1:
        return (2,)
    a, b = z_word(n - 1), z_word(n - 2)
    return a + b + b


def z_data(n: int) -> ZData:
    if not 0 <= n <= N_MAX:
        raise ValueError("word length exceeds budget" if n > N_MAX else "n must be >= 0")
    Z = z_word(n)
    return ZData(n, Z, q_of(Z), periodic(z_word(n + 1) + Z))


def _dps_for(q: int) -> int:
    # enough working digits to separate numbers ~ 1/q^4 apart
    return max(30, 5 * len(str(q)) + 20)


def feigenbaum_enclosure(n: int) -> Enclosure:
    """[alpha_n, g_n] with g_n = [0; Z_n Z_n ...]; c_F lies inside."""
    if not 1 <= n <= N_MAX:
        raise ValueError(f"n must be in 1..{N_MAX}")
    d = z_data(n)
    with mpmath.workdps(_dps_for(q_of(z_word(n + 1)))):
        lo = to_mpf(d.alpha)
        hi = to_mpf(periodic(d.Z))
    return Enclosure(lo, hi, {"n": n})


@dataclass(frozen=True)
class FeigenbaumPoint:
    n: int
    cf_prefix: Word
    enclosure: Enclosure
    decimal: str


def _common_prefix(a: ExactNumber, b: ExactNumber, limit: int) -> Word:
    out = []
    for i in range(limit):
        x, y = a.digit(i), b.digit(i)
        if x is None or x != y:
            break
        out.append(x)
    return tuple(out)


def feigenbaum_point(digits: int = 10) -> FeigenbaumPoint:
    """Smallest-level enclosure of c_F narrower than 10^-digits."""
    if not 1 <= digits <= 64:
        raise ValueError("digits must be in 1..64")
    for n in range(1, N_MAX + 1):
        enc = feigenbaum_enclosure(n)
        if enc.width < mpmath.mpf(10) ** (-digits):
            break
    else:  # pragma: no cover - the budget covers 64 digits
        raise ValueError("precision exceeds budget")
    d = z_data(n)
    prefix = _common_prefix(d.alpha, periodic(d.Z), 4 * len(d.Z))
    with mpmath.workdps(digits + 30):
        lo = enc.lo
        s = mpmath.nstr(mpmath.floor(lo * mpmath.mpf(10) ** digits), digits + 5)
    decimal = "0." + s.split(".")[0].rjust(digits, "0")
    return FeigenbaumPoint(n, prefix, enc, decimal)


@dataclass(frozen=True)
class ScalingRow:
    n: int
    q_next: int
    dim: Enclosure
    dist: Enclosure
    product: Enclosure

    def csv(self, digits: int = 12) -> List[str]:
        f = lambda v: mpmath.nstr(v, digits)
        return [str(self.n), str(self.q_next), f(self.dim.lo), f(self.dim.hi),
                f(self.dist.lo), f(self.dist.hi), f(self.product.lo), f(self.product.hi)]


SCALING_HEADER = "n,q_next,dim_lo,dim_hi,dist_lo,dist_hi,prod_lo,prod_hi"


def scaling_limit():
    return 5 * mpmath.log(PHI)


def scaling_product(n: int) -> ScalingRow:
    if not 1 <= n <= SCALING_N_MAX:
        raise ValueError(f"n must be in 1..{SCALING_N_MAX}")
    q = q_of(z_word(n + 1))
    with mpmath.workdps(40):
        L, l2 = mpmath.log(q), mpmath.log(2)
        lphi = mpmath.log(PHI)
        dim = Enclosure(lphi / (L + l2), lphi / (L - l2), {"n": n})
        q5 = mpmath.mpf(q) ** 5
        dist = Enclosure(1 / (96 * q5), 2 / q5, {"n": n})
        prod = Enclosure(dim.lo * mpmath.log(1 / dist.hi),
                         dim.hi * mpmath.log(1 / dist.lo), {"n": n})
    return ScalingRow(n, q, dim, dist, prod)


def direct_distance(n: int) -> Tuple[Enclosure, bool]:
    """|c_F - alpha_n| from the exact alpha_n and a much finer c_F enclosure,
    together with whether it falls inside the (1/96, 2)/q^5 bounds."""
    fine = feigenbaum_enclosure(min(N_MAX, n + 3))
    row = scaling_product(n)
    with mpmath.workdps(_dps_for(row.q_next ** 2)):
        a = to_mpf(z_data(n).alpha)
        d = Enclosure(abs(fine.lo - a), abs(fine.hi - a), {"n": n})
        if d.lo > d.hi:
            d = Enclosure(d.hi, d.lo, d.meta)
    ok = row.dist.lo <= d.lo and d.hi <= row.dist.hi
    return d, ok


def relative_width(e: Enclosure):
    return e.width / e.mid
