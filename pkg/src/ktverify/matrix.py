"""Dense immutable matrices of Fractions.

Products go through integer arithmetic: each row of the left factor and each
column of the right factor is scaled to integers by its own common
denominator, so the inner loops are plain int multiply-adds and only the
finished entries are normalized.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from operator import mul
from typing import Iterable, Sequence

from .exact import Rational


def _lcm_den(xs: Iterable[Fraction]) -> int:
    out = 1
    for x in xs:
        out = math.lcm(out, x.denominator)
    return out


def _scaled(vec: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    den = _lcm_den(vec)
    return tuple(x.numerator * (den // x.denominator) for x in vec), den


class RationalMatrix:
    def __init__(self, rows: Iterable[Iterable[Rational]]):
        self.rows = tuple(tuple(x if type(x) is Fraction else Fraction(x) for x in row) for row in rows)
        if self.rows and len({len(r) for r in self.rows}) != 1:
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> RationalMatrix:
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values: Sequence[Rational]) -> RationalMatrix:
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int, m: int | None = None) -> RationalMatrix:
        return cls([[0] * (n if m is None else m) for _ in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> RationalMatrix:
        return RationalMatrix(zip(*self.rows))

    T = property(transpose)

    @cached_property
    def _int_rows(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        return tuple(_scaled(r) for r in self.rows)

    @cached_property
    def _int_cols(self) -> tuple[tuple[tuple[int, ...], int], ...]:
        return tuple(_scaled(c) for c in zip(*self.rows))

    def __matmul__(self, other: RationalMatrix) -> RationalMatrix:
        if self.shape[1] != other.shape[0]:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other._int_cols
        return RationalMatrix(
            [Fraction(sum(map(mul, r, c)), rd * cd) for c, cd in cols]
            for r, rd in self._int_rows
        )

    def __add__(self, other: RationalMatrix) -> RationalMatrix:
        return RationalMatrix(map(lambda r, s: map(Fraction.__add__, r, s), self.rows, other.rows))

    def __sub__(self, other: RationalMatrix) -> RationalMatrix:
        return RationalMatrix(map(lambda r, s: map(Fraction.__sub__, r, s), self.rows, other.rows))

    def __neg__(self) -> RationalMatrix:
        return RationalMatrix([-x for x in r] for r in self.rows)

    def scale(self, k: Rational) -> RationalMatrix:
        k = Fraction(k)
        return RationalMatrix([x * k for x in r] for r in self.rows)

    def __mul__(self, k: Rational) -> RationalMatrix:
        return self.scale(k)

    __rmul__ = __mul__

    def scale_rows(self, d: Sequence[Rational]) -> RationalMatrix:
        """diag(d) @ self without a full product."""
        return RationalMatrix([x * k for x in r] for r, k in zip(self.rows, d))

    def scale_cols(self, d: Sequence[Rational]) -> RationalMatrix:
        """self @ diag(d) without a full product."""
        return RationalMatrix([x * k for x, k in zip(r, d)] for r in self.rows)

    def apply(self, vec: Sequence[Rational]) -> tuple[Fraction, ...]:
        return tuple(sum((x * Fraction(v) for x, v in zip(r, vec)), Fraction(0)) for r in self.rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_irreducible_tridiagonal(self) -> bool:
        n = len(self.rows)
        for i, r in enumerate(self.rows):
            for j, x in enumerate(r):
                if abs(i - j) > 1 and x != 0:
                    return False
                if abs(i - j) == 1 and x == 0:
                    return False
        return n > 0

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.rows]

    def __repr__(self) -> str:
        body = "; ".join(", ".join(map(str, r)) for r in self.rows)
        return f"RationalMatrix([{body}])"
