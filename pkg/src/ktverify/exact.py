"""Exact number kernel: half-integers, prime-factored rationals and surds.

Rationals are plain :class:`fractions.Fraction` throughout the package; the
types here cover what Fraction cannot express exactly (square roots) or
cannot express cheaply (large factorial ratios kept as prime exponents).
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

Rational = Union[int, Fraction]


class DomainError(ValueError):
    """An input lies outside the domain of the requested operation."""


class ConsistencyError(AssertionError):
    """Two routes that must agree did not; signals a bug, not a user error."""


# ---------------------------------------------------------------------------
# half-integers


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of (1/2)Z stored as twice its value."""

    twice: int

    @classmethod
    def of(cls, x: HalfInt | Rational) -> HalfInt:
        if isinstance(x, HalfInt):
            return x
        x = Fraction(x)
        if x.denominator not in (1, 2):
            raise DomainError(f"{x} is not a half-integer")
        return cls(int(2 * x))

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __int__(self) -> int:
        if self.twice % 2:
            raise DomainError(f"{self} is not an integer")
        return self.twice // 2

    def __add__(self, other: HalfInt) -> HalfInt:
        return HalfInt(self.twice + HalfInt.of(other).twice)

    __radd__ = __add__

    def __sub__(self, other: HalfInt) -> HalfInt:
        return HalfInt(self.twice - HalfInt.of(other).twice)

    def __rsub__(self, other: HalfInt) -> HalfInt:
        return HalfInt(HalfInt.of(other).twice - self.twice)

    def __neg__(self) -> HalfInt:
        return HalfInt(-self.twice)

    def __str__(self) -> str:
        return str(self.twice // 2) if self.twice % 2 == 0 else f"{self.twice}/2"

    def __repr__(self) -> str:
        return f"HalfInt({self})"


# ---------------------------------------------------------------------------
# primes and factored rationals


@lru_cache(maxsize=None)
def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, f in enumerate(flags) if f)


def primes_upto(n: int) -> tuple[int, ...]:
    """All primes <= n. Sieves in power-of-two blocks so tables are shared."""
    if n < 2:
        return ()
    limit = 1 << max(6, (n - 1).bit_length())
    table = _sieve(limit)
    return table[: bisect_right(table, n)]


@dataclass(frozen=True)
class FactoredRational:
    """sign * prod(p**e) with the exponent map kept sorted by prime."""

    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"bad sign {self.sign}")
        if self.sign == 0 and self.factors:
            raise DomainError("zero must have an empty factor map")

    @classmethod
    def from_map(cls, sign: int, exps: Mapping[int, int]) -> FactoredRational:
        if sign == 0:
            return ZERO_F
        return cls(sign, tuple(sorted((p, e) for p, e in exps.items() if e)))

    @classmethod
    def from_int(cls, n: int) -> FactoredRational:
        """Trial division; meant for small literals, not opaque big integers."""
        if n == 0:
            return ZERO_F
        sign, n = (1, n) if n > 0 else (-1, -n)
        exps: dict[int, int] = {}
        for p in primes_upto(math.isqrt(n)):
            while n % p == 0:
                exps[p] = exps.get(p, 0) + 1
                n //= p
        if n > 1:
            exps[n] = exps.get(n, 0) + 1
        return cls.from_map(sign, exps)

    @classmethod
    def from_fraction(cls, x: Rational) -> FactoredRational:
        x = Fraction(x)
        return cls.from_int(x.numerator) / cls.from_int(x.denominator)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def __mul__(self, other: FactoredRational) -> FactoredRational:
        if self.sign == 0 or other.sign == 0:
            return ZERO_F
        exps = self.as_dict()
        for p, e in other.factors:
            exps[p] = exps.get(p, 0) + e
        return FactoredRational.from_map(self.sign * other.sign, exps)

    def inverse(self) -> FactoredRational:
        if self.sign == 0:
            raise ZeroDivisionError("inverse of zero")
        return FactoredRational(self.sign, tuple((p, -e) for p, e in self.factors))

    def __truediv__(self, other: FactoredRational) -> FactoredRational:
        return self * other.inverse()

    def __pow__(self, k: int) -> FactoredRational:
        if self.sign == 0:
            if k <= 0:
                raise ZeroDivisionError("0 ** nonpositive")
            return ZERO_F
        return FactoredRational(self.sign**k, tuple((p, e * k) for p, e in self.factors))

    def to_fraction(self) -> Fraction:
        num = den = 1
        for p, e in self.factors:
            if e > 0:
                num *= p**e
            else:
                den *= p ** (-e)
        return Fraction(self.sign * num, den)


ZERO_F = FactoredRational(0)
ONE_F = FactoredRational(1)


@lru_cache(maxsize=None)
def factored_factorial(n: int) -> FactoredRational:
    """n! by Legendre's formula: the exponent of p is sum_k floor(n / p**k)."""
    if n < 0:
        raise DomainError(f"factorial of negative {n}")
    exps = []
    for p in primes_upto(n):
        e, q = 0, n
        while q:
            q //= p
            e += q
        exps.append((p, e))
    return FactoredRational(1, tuple(exps))


def factorial_ratio(num: Iterable[int], den: Iterable[int]) -> FactoredRational:
    """prod(m! for m in num) / prod(m! for m in den)."""
    exps: dict[int, int] = {}
    for args, s in ((num, 1), (den, -1)):
        for m in args:
            for p, e in factored_factorial(m).factors:
                exps[p] = exps.get(p, 0) + s * e
    return FactoredRational.from_map(1, exps)


# ---------------------------------------------------------------------------
# surds


@dataclass(frozen=True)
class Surd:
    """coeff * sqrt(radicand), radicand squarefree."""

    coeff: Fraction
    radicand: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))
        if self.radicand < 1:
            raise DomainError(f"radicand must be positive, got {self.radicand}")
        if self.coeff == 0 and self.radicand != 1:
            object.__setattr__(self, "radicand", 1)

    @property
    def is_zero(self) -> bool:
        return self.coeff == 0

    @property
    def is_rational(self) -> bool:
        return self.radicand == 1

    def __mul__(self, other: Surd | Rational) -> Surd:
        if not isinstance(other, Surd):
            return Surd(self.coeff * Fraction(other), self.radicand)
        # sqrt(m)*sqrt(n) = g*sqrt((m/g)*(n/g)); m/g and n/g coprime squarefree
        g = math.gcd(self.radicand, other.radicand)
        return Surd(self.coeff * other.coeff * g, (self.radicand // g) * (other.radicand // g))

    __rmul__ = __mul__

    def __neg__(self) -> Surd:
        return Surd(-self.coeff, self.radicand)

    def square(self) -> Fraction:
        return self.coeff * self.coeff * self.radicand

    def to_sum(self) -> SurdSum:
        return SurdSum.of(self)

    def __float__(self) -> float:
        return float(self.coeff) * math.sqrt(self.radicand)

    def __str__(self) -> str:
        if self.radicand == 1:
            return str(self.coeff)
        return f"{self.coeff}*sqrt({self.radicand})"


ZERO_SURD = Surd(Fraction(0))


def sqrt_to_surd(x: FactoredRational) -> Surd:
    """The nonnegative square root of x, read off from its prime exponents."""
    if x.sign < 0:
        raise DomainError("square root of a negative value")
    if x.sign == 0:
        return ZERO_SURD
    num = den = rad = 1
    for p, e in x.factors:
        half, odd = divmod(e, 2)
        if half > 0:
            num *= p**half
        elif half < 0:
            den *= p ** (-half)
        if odd:
            rad *= p
    return Surd(Fraction(num, den), rad)


@dataclass(frozen=True)
class SurdSum:
    """A finite sum of surds with distinct squarefree radicands."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_map(cls, m: Mapping[int, Fraction]) -> SurdSum:
        return cls(tuple(sorted((r, Fraction(c)) for r, c in m.items() if c)))

    @classmethod
    def of(cls, *items: Surd | Rational) -> SurdSum:
        acc: dict[int, Fraction] = {}
        for s in items:
            if not isinstance(s, Surd):
                s = Surd(Fraction(s))
            acc[s.radicand] = acc.get(s.radicand, Fraction(0)) + s.coeff
        return cls.from_map(acc)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: SurdSum | Surd | Rational) -> SurdSum:
        if not isinstance(other, SurdSum):
            other = SurdSum.of(other)
        acc = dict(self.terms)
        for r, c in other.terms:
            acc[r] = acc.get(r, Fraction(0)) + c
        return SurdSum.from_map(acc)

    __radd__ = __add__

    def __neg__(self) -> SurdSum:
        return SurdSum(tuple((r, -c) for r, c in self.terms))

    def __sub__(self, other: SurdSum | Surd | Rational) -> SurdSum:
        if not isinstance(other, SurdSum):
            other = SurdSum.of(other)
        return self + (-other)

    def scale(self, k: Rational) -> SurdSum:
        k = Fraction(k)
        return SurdSum.from_map({r: c * k for r, c in self.terms})

    def __mul__(self, other: SurdSum | Surd | Rational) -> SurdSum:
        if not isinstance(other, (SurdSum, Surd)):
            return self.scale(other)
        if isinstance(other, Surd):
            other = SurdSum.of(other)
        out = SurdSum()
        for r1, c1 in self.terms:
            for r2, c2 in other.terms:
                out = out + Surd(c1, r1) * Surd(c2, r2)
        return out

    __rmul__ = __mul__

    def __float__(self) -> float:
        return math.fsum(float(c) * math.sqrt(r) for r, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(str(Surd(c, r)) for r, c in self.terms)
