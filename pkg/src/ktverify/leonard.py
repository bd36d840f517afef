"""The self-dual Racah-type Leonard pair A, A* of diameter D and its polynomials.

Intersection-array data for 0 <= i <= D:

    c_i = 3(D-i+1) i (D+i+1) / (D(D+2)(2i+1))
    a_i = 3 i (i+1) / (D(D+2))
    b_i = 3(D-i)(i+1)(D+i+2) / (D(D+2)(2i+1))
    theta_i = 3 - 2 a_i

u_i are the normalized polynomials (u_i(theta_0) = 1) and v_i = k_i u_i.
Only their values on the theta grid are ever stored.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import prod

from .exact import ConsistencyError, DomainError
from .hyper import HypParams, eval_4f3_unit
from .matrix import RationalMatrix


@dataclass(frozen=True)
class RacahSystem:
    """Scalar data of the pair for one D.

    ``c`` and ``b`` are padded to length D+1 with c[0] = b[D] = 0 so that row i
    of A is always (c_i, a_i, b_i).
    """

    D: int
    c: tuple[Fraction, ...]
    a: tuple[Fraction, ...]
    b: tuple[Fraction, ...]
    theta: tuple[Fraction, ...]
    k: tuple[Fraction, ...]
    nu: Fraction

    @property
    def size(self) -> int:
        return self.D + 1

    def check_invariants(self) -> list[str]:
        D, bad = self.D, []
        if any(self.k[i] != 2 * i + 1 for i in range(D + 1)):
            bad.append("k_i != 2i+1")
        if self.nu != (D + 1) ** 2 or sum(self.k) != self.nu:
            bad.append("nu != (D+1)^2 = sum k_i")
        if len(set(self.theta)) != D + 1:
            bad.append("theta not distinct")
        if any(self.c[i] <= 0 for i in range(1, D + 1)) or any(self.b[i] <= 0 for i in range(D)):
            bad.append("c_i or b_i not positive")
        return bad


@lru_cache(maxsize=None)
def build_system(D: int) -> RacahSystem:
    if D < 1:
        raise DomainError(f"D must be a positive integer, got {D}")
    den = D * (D + 2)
    c = [Fraction(0)] + [Fraction(3 * (D - i + 1) * i * (D + i + 1), den * (2 * i + 1)) for i in range(1, D + 1)]
    a = [Fraction(3 * i * (i + 1), den) for i in range(D + 1)]
    b = [Fraction(3 * (D - i) * (i + 1) * (D + i + 2), den * (2 * i + 1)) for i in range(D)] + [Fraction(0)]
    theta = [3 - 2 * x for x in a]
    # k_i from the product formula; equals 2i+1, checked below
    k = [prod(b[:i], start=Fraction(1)) / prod(c[1 : i + 1], start=Fraction(1)) for i in range(D + 1)]
    sys = RacahSystem(D, tuple(c), tuple(a), tuple(b), tuple(theta), tuple(k), Fraction((D + 1) ** 2))
    bad = sys.check_invariants()
    if bad:
        raise ConsistencyError(f"D={D}: {bad}")
    return sys


def matrix_a(sys: RacahSystem) -> RationalMatrix:
    n = sys.size
    return RationalMatrix(
        [
            sys.c[i] if j == i - 1 else sys.a[i] if j == i else sys.b[i] if j == i + 1 else 0
            for j in range(n)
        ]
        for i in range(n)
    )


def matrix_a_star(sys: RacahSystem) -> RationalMatrix:
    return RationalMatrix.diag(sys.theta)


@lru_cache(maxsize=None)
def _u_rows(D: int) -> tuple[tuple[Fraction, ...], ...]:
    sys = build_system(D)
    rows = [[Fraction(1)] * (D + 1), [t / 3 for t in sys.theta]]
    for i in range(1, D):
        a_i, b_i, c_i = sys.a[i], sys.b[i], sys.c[i]
        rows.append([((lam - a_i) * u - c_i * w) / b_i for lam, u, w in zip(sys.theta, rows[i], rows[i - 1])])
    return tuple(tuple(r) for r in rows[: D + 1])


def u_table(sys: RacahSystem) -> RationalMatrix:
    """Entry (i, j) is u_i(theta_j), from the three-term recurrence for u."""
    return RationalMatrix(_u_rows(sys.D))


def u_hyper(D: int, i: int, j: int) -> Fraction:
    """u_i(theta_j) as 4F3[-i, i+1, -j, j+1; 1, D+2, -D; 1]."""
    return eval_4f3_unit(HypParams((-i, i + 1, -j, j + 1), (1, D + 2, -D)))


def u_table_hyper(sys: RacahSystem) -> RationalMatrix:
    """Entry (i, j) is u_i(theta_j), one 4F3 evaluation per entry."""
    n = sys.size
    return RationalMatrix([u_hyper(sys.D, i, j) for j in range(n)] for i in range(n))


@lru_cache(maxsize=None)
def _v_rows_recurrence(D: int) -> tuple[tuple[Fraction, ...], ...]:
    sys = build_system(D)
    rows = [[Fraction(1)] * (D + 1), list(sys.theta)]
    for i in range(1, D):
        a_i, b_prev, c_next = sys.a[i], sys.b[i - 1], sys.c[i + 1]
        rows.append([((lam - a_i) * v - b_prev * w) / c_next for lam, v, w in zip(sys.theta, rows[i], rows[i - 1])])
    return tuple(tuple(r) for r in rows[: D + 1])


def v_table_recurrence(sys: RacahSystem) -> RationalMatrix:
    return RationalMatrix(_v_rows_recurrence(sys.D))


@lru_cache(maxsize=None)
def _v_rows(D: int) -> tuple[tuple[Fraction, ...], ...]:
    sys = build_system(D)
    rows = tuple(tuple(sys.k[i] * x for x in row) for i, row in enumerate(_u_rows(D)))
    if rows != _v_rows_recurrence(D):
        raise ConsistencyError(f"D={D}: k_i u_i disagrees with the v recurrence")
    return rows


def v_table(sys: RacahSystem) -> RationalMatrix:
    """Entry (i, j) is v_i(theta_j) = k_i u_i(theta_j), cross-checked against the v recurrence."""
    return RationalMatrix(_v_rows(sys.D))


def matrix_p(sys: RacahSystem) -> RationalMatrix:
    """P[i, j] = v_j(theta_i)."""
    return v_table(sys).transpose()


def matrix_p_hyper(sys: RacahSystem) -> RationalMatrix:
    """P[i, j] = (2j+1) 4F3[-i, i+1, -j, j+1; 1, D+2, -D; 1]."""
    n = sys.size
    return RationalMatrix([(2 * j + 1) * u_hyper(sys.D, i, j) for j in range(n)] for i in range(n))


ORTHOGONALITY_RELATIONS = ("u-first", "u-second", "v-first", "v-second")


def orthogonality_gram(sys: RacahSystem, relation: str) -> tuple[RationalMatrix, RationalMatrix]:
    """(computed, expected) Gram matrices indexed by (n, m).

    u-first:  sum_j k_j u_n(theta_j) u_m(theta_j)   = nu / k_n delta
    u-second: sum_j k_j u_j(theta_n) u_j(theta_m)   = nu / k_n delta
    v-first:  sum_j k_j v_n(theta_j) v_m(theta_j)   = nu k_n delta
    v-second: sum_j v_j(theta_n) v_j(theta_m) / k_j = nu / k_n delta
    """
    k = sys.k
    if relation == "u-first":
        U = u_table(sys)
        return U.scale_cols(k) @ U.T, RationalMatrix.diag([sys.nu / x for x in k])
    if relation == "u-second":
        U = u_table(sys)
        return U.T.scale_cols(k) @ U, RationalMatrix.diag([sys.nu / x for x in k])
    if relation == "v-first":
        V = v_table(sys)
        return V.scale_cols(k) @ V.T, RationalMatrix.diag([sys.nu * x for x in k])
    if relation == "v-second":
        V = v_table(sys)
        return V.T.scale_cols([1 / x for x in k]) @ V, RationalMatrix.diag([sys.nu / x for x in k])
    raise DomainError(f"unknown relation {relation!r}; expected one of {ORTHOGONALITY_RELATIONS}")


def orthogonality_check(sys: RacahSystem, relation: str) -> bool:
    got, want = orthogonality_gram(sys, relation)
    return got == want
