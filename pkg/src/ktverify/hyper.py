"""Terminating 4F3 series at unit argument and the Whipple transformation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import DomainError, Rational


class NonTerminating(DomainError):
    pass


class DivergentLowerParam(DomainError):
    pass


class BalanceViolation(DomainError):
    pass


class ZeroDenominator(DomainError):
    pass


def _nonpositive_int(x: Fraction) -> bool:
    return x.denominator == 1 and x <= 0


@dataclass(frozen=True)
class HypParams:
    upper: tuple[Fraction, Fraction, Fraction, Fraction]
    lower: tuple[Fraction, Fraction, Fraction]

    def __init__(self, upper: Sequence[Rational], lower: Sequence[Rational]):
        if len(upper) != 4 or len(lower) != 3:
            raise DomainError("a 4F3 takes four upper and three lower parameters")
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in lower))

    def __str__(self) -> str:
        up = ", ".join(map(str, self.upper))
        lo = ", ".join(map(str, self.lower))
        return f"4F3[{up}; {lo}; 1]"


def pochhammer(a: Rational, n: int) -> Fraction:
    """Rising factorial a(a+1)...(a+n-1)."""
    if n < 0:
        raise DomainError(f"pochhammer length must be >= 0, got {n}")
    a = Fraction(a)
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


def termination_index(p: HypParams) -> int:
    stops = [-int(a) for a in p.upper if _nonpositive_int(a)]
    if not stops:
        raise NonTerminating(f"{p} has no nonpositive integer upper parameter")
    return min(stops)


def eval_4f3_unit(p: HypParams) -> Fraction:
    """Exact value of the terminating series at z = 1.

    The sum is nested from the last term inward,
    S = 1 + r_0 (1 + r_1 (1 + ... (1 + r_{N-1}))),
    with r_n the ratio of consecutive terms, carried as an integer pair so
    the only gcd is taken once at the end.
    """
    N = termination_index(p)
    up = [(a.numerator, a.denominator) for a in p.upper]
    lo = [(b.numerator, b.denominator) for b in p.lower]
    up_den = lo_den = 1
    for _, q in up:
        up_den *= q
    for _, q in lo:
        lo_den *= q

    ratios = []
    for n in range(N):
        num = lo_den
        for a, q in up:
            num *= a + n * q
        den = up_den * (n + 1)
        for b, q in lo:
            f = b + n * q
            if f == 0:
                raise DivergentLowerParam(f"lower Pochhammer vanishes at n={n + 1} in {p}")
            den *= f
        ratios.append((num, den))

    s_num, s_den = 1, 1
    for num, den in reversed(ratios):
        s_num, s_den = den * s_den + num * s_num, den * s_den
    return Fraction(s_num, s_den)


@dataclass(frozen=True)
class WhippleRoles:
    """Which slots play -p, q, a1, a2 (upper) and r, b1, b2 (lower)."""

    upper: tuple[int, int, int, int] = (0, 1, 2, 3)
    lower: tuple[int, int, int] = (0, 1, 2)

    def __post_init__(self):
        if sorted(self.upper) != [0, 1, 2, 3] or sorted(self.lower) != [0, 1, 2]:
            raise DomainError(f"roles must be permutations, got {self}")


def whipple_transform(p: HypParams, roles: WhippleRoles = WhippleRoles()) -> tuple[Fraction, HypParams]:
    """Return (coefficient, transformed) with eval(p) == coefficient * eval(transformed).

    Transformation: 4F3[-m, q, a1, a2; r, b1, b2] with q+a1+a2+1 = r+b1+b2+m
    maps to 4F3[-m, q, r-a1, r-a2; r, 1+q-b1-m, 1+q-b2-m] times
    (b1-q)_m (b2-q)_m / ((b1)_m (b2)_m).
    """
    neg_m, q, a1, a2 = (p.upper[k] for k in roles.upper)
    r, b1, b2 = (p.lower[k] for k in roles.lower)
    if not _nonpositive_int(neg_m):
        raise DomainError(f"slot {roles.upper[0]} must be a nonpositive integer, got {neg_m}")
    m = -int(neg_m)
    if q + a1 + a2 + 1 != r + b1 + b2 + m:
        raise BalanceViolation(f"{q}+{a1}+{a2}+1 != {r}+{b1}+{b2}+{m}")
    den = pochhammer(b1, m) * pochhammer(b2, m)
    if den == 0:
        raise ZeroDenominator(f"(b1)_m (b2)_m vanishes for b1={b1}, b2={b2}, m={m}")
    coeff = pochhammer(b1 - q, m) * pochhammer(b2 - q, m) / den
    transformed = HypParams((neg_m, q, r - a1, r - a2), (r, 1 + q - b1 - m, 1 + q - b2 - m))
    return coeff, transformed
