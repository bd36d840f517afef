"""Racah coefficients W(a,b,c,d;e,f) as exact surds.

W is evaluated from the terminating 4F3 form

    W = D(a,b,e) D(c,d,e) D(a,c,f) D(b,d,f) (b1+1)! (-1)^(b1-(a+b+c+d))
        / ((b2-b1)! (b3-b1)! prod_k (b1-alpha_k)!)
        * 4F3[alpha_k - b1; -b1-1, b2-b1+1, b3-b1+1; 1]

with alpha = (a+b+e, c+d+e, a+c+f, b+d+f), b1 the least of
(a+b+c+d, a+d+e+f, b+c+e+f) and b2, b3 the other two. W vanishes unless
all four triads are admissible.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Union

from .exact import (
    DomainError,
    FactoredRational,
    HalfInt,
    Rational,
    Surd,
    SurdSum,
    ZERO_SURD,
    factorial_ratio,
    sqrt_to_surd,
)
from .hyper import HypParams, eval_4f3_unit

Spin = Union[HalfInt, Rational]


class NotAdmissible(DomainError):
    pass


class SpinSextuple(NamedTuple):
    a: HalfInt
    b: HalfInt
    c: HalfInt
    d: HalfInt
    e: HalfInt
    f: HalfInt

    @classmethod
    def of(cls, *spins: Spin) -> SpinSextuple:
        return cls(*(_spin(s) for s in spins))

    @classmethod
    def from_twice(cls, *twice: int) -> SpinSextuple:
        return cls.of(*(HalfInt(t) for t in twice))


def _spin(x: Spin) -> HalfInt:
    x = HalfInt.of(x)
    if x.twice < 0:
        raise DomainError(f"spins must be nonnegative, got {x}")
    return x


def is_admissible(a: Spin, b: Spin, c: Spin) -> bool:
    a, b, c = _spin(a), _spin(b), _spin(c)
    if (a.twice + b.twice + c.twice) % 2:
        return False
    return a <= b + c and b <= c + a and c <= a + b


def triangle_delta_sq(a: Spin, b: Spin, c: Spin) -> FactoredRational:
    """Squared triangle coefficient (a+b-c)!(b+c-a)!(c+a-b)!/(a+b+c+1)!."""
    if not is_admissible(a, b, c):
        raise NotAdmissible(f"({a}, {b}, {c}) is not admissible")
    a, b, c = _spin(a), _spin(b), _spin(c)
    return factorial_ratio(
        (int(a + b - c), int(b + c - a), int(c + a - b)),
        (int(a + b + c) + 1,),
    )


@dataclass(frozen=True)
class WIndexFrame:
    alpha: tuple[int, int, int, int]
    beta: tuple[int, int, int]


def w_frame(s: SpinSextuple) -> WIndexFrame:
    """Canonical frame: alphas ascending, beta_1 the minimum, beta_2 <= beta_3.

    Only meaningful when all four triads are admissible (then every entry is
    an integer).
    """
    a, b, c, d, e, f = s
    alpha = sorted(int(x) for x in (a + b + e, c + d + e, a + c + f, b + d + f))
    beta = sorted(int(x) for x in (a + b + c + d, a + d + e + f, b + c + e + f))
    return WIndexFrame(tuple(alpha), tuple(beta))


def evaluate_frame(s: SpinSextuple, frame: WIndexFrame) -> Surd:
    """W for an admissible sextuple from an explicit (possibly permuted) frame.

    frame.beta[0] must be the minimum of the three sums; the order of the
    alphas and of beta[1], beta[2] is free.
    """
    a, b, c, d, e, f = s
    b1, b2, b3 = frame.beta
    if b1 > min(b2, b3):
        raise DomainError(f"beta_1 must be the least beta, got {frame.beta}")
    gaps = [b1 - x for x in frame.alpha]
    if min(gaps) < 0:
        raise AssertionError(f"beta_1 below an alpha for admissible {s}: {frame}")
    sign_exp = HalfInt(2 * b1) - (a + b + c + d)
    if not sign_exp.is_integer:
        raise AssertionError(f"half-integer sign exponent for admissible {s}")

    delta_sq = (
        triangle_delta_sq(a, b, e)
        * triangle_delta_sq(c, d, e)
        * triangle_delta_sq(a, c, f)
        * triangle_delta_sq(b, d, f)
    )
    prefactor = factorial_ratio((b1 + 1,), (b2 - b1, b3 - b1, *gaps)).to_fraction()
    if int(sign_exp) % 2:
        prefactor = -prefactor
    series = eval_4f3_unit(HypParams([x - b1 for x in frame.alpha], [-b1 - 1, b2 - b1 + 1, b3 - b1 + 1]))
    return sqrt_to_surd(delta_sq) * (prefactor * series)


def all_triads_admissible(s: SpinSextuple) -> bool:
    a, b, c, d, e, f = s
    return (
        is_admissible(a, b, e)
        and is_admissible(c, d, e)
        and is_admissible(a, c, f)
        and is_admissible(b, d, f)
    )


@lru_cache(maxsize=1 << 16)
def _racah_w(s: SpinSextuple) -> Surd:
    if not all_triads_admissible(s):
        return ZERO_SURD
    return evaluate_frame(s, w_frame(s))


def racah_w(a: Spin, b: Spin, c: Spin, d: Spin, e: Spin, f: Spin) -> Surd:
    """The Racah coefficient W(a,b,c,d;e,f); zero when a triad is inadmissible."""
    return _racah_w(SpinSextuple.of(a, b, c, d, e, f))


def w_quarter_closed(D: int, i: int, j: int) -> Fraction:
    """Closed form of W(D/2,D/2,D/2,D/2;i,j)."""
    if D < 1 or not (0 <= i <= D and 0 <= j <= D):
        raise DomainError(f"need D >= 1 and 0 <= i, j <= D, got D={D}, i={i}, j={j}")
    series = eval_4f3_unit(HypParams((-i, i + 1, -j, j + 1), (1, D + 2, -D)))
    sign = -1 if (i + j - D) % 2 else 1
    return Fraction(sign, D + 1) * series


def _pm(x: HalfInt) -> int:
    return -1 if int(x) % 2 else 1


def be_sides(a, ap, b, bp, c, cp, e, f, g) -> tuple[SurdSum, SurdSum]:
    """Both sides of the Biedenharn-Elliott identity

        sum_d (-1)^(c+c'-d) (2d+1) W(b,b',c,c';d,e) W(a,a',c,c';d,f) W(a,a',b,b';d,g)
            = (-1)^(e+f-g) W(a,b,f,e;g,c) W(a',b',f,e;g,c').

    Only d with (a,a',d), (b,b',d), (c,c',d) all admissible contribute, so d
    runs over the intersection of the three triangle ranges in unit steps.
    """
    a, ap, b, bp, c, cp, e, f, g = (_spin(x) for x in (a, ap, b, bp, c, cp, e, f, g))
    lo = max(abs(x.twice - y.twice) for x, y in ((a, ap), (b, bp), (c, cp)))
    hi = min(x.twice + y.twice for x, y in ((a, ap), (b, bp), (c, cp)))
    lhs = SurdSum()
    for td in range(lo, hi + 1, 2):
        d = HalfInt(td)
        w1 = racah_w(b, bp, c, cp, d, e)
        if w1.is_zero:
            continue
        w2 = racah_w(a, ap, c, cp, d, f)
        if w2.is_zero:
            continue
        w3 = racah_w(a, ap, b, bp, d, g)
        if w3.is_zero:
            continue
        lhs = lhs + (w1 * w2 * w3) * (_pm(c + cp - d) * (td + 1))

    rhs = SurdSum()
    r1 = racah_w(a, b, f, e, g, c)
    r2 = racah_w(ap, bp, f, e, g, cp)
    if not (r1.is_zero or r2.is_zero):
        rhs = SurdSum.of(r1 * r2 * _pm(e + f - g))
    return lhs, rhs


def be_residual(a, ap, b, bp, c, cp, e, f, g) -> SurdSum:
    """LHS - RHS of the Biedenharn-Elliott identity; the zero SurdSum when it holds."""
    lhs, rhs = be_sides(a, ap, b, bp, c, cp, e, f, g)
    return lhs - rhs
