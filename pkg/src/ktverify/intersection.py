"""The matrices B_i = v_i(A) and the intersection numbers p^h_{i,j} = (B_i)_{h,j}.

Four independent routes to the same tensor:

matrix      read off the entries of B_i
triple_sum  k_i k_j / nu * sum_t k_t u_t(theta_i) u_t(theta_j) u_t(theta_h)
racah       (2i+1)(2j+1)(D+1) W(D/2, D/2, i, h; j, D/2)^2
appendix    closed-form factorial prefactor times a squared 4F3, on the cone
            i <= j <= h <= i+j and extended by symmetry
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .exact import ConsistencyError, DomainError, HalfInt, factorial_ratio
from .hyper import HypParams, eval_4f3_unit
from .leonard import RacahSystem, build_system, matrix_a, u_table, v_table
from .matrix import RationalMatrix
from .racah import racah_w

ROUTES = ("matrix", "triple_sum", "racah", "appendix")

Tensor = tuple[tuple[tuple[Fraction, ...], ...], ...]


@lru_cache(maxsize=None)
def _b_matrices(D: int) -> tuple[RationalMatrix, ...]:
    sys = build_system(D)
    A = matrix_a(sys)
    out = [RationalMatrix.identity(D + 1), A]
    for i in range(1, D):
        nxt = (A @ out[i] - out[i].scale(sys.a[i]) - out[i - 1].scale(sys.b[i - 1])).scale(1 / sys.c[i + 1])
        out.append(nxt)
    return tuple(out[: D + 1])


def _check_index(sys: RacahSystem, i: int) -> None:
    if not 0 <= i <= sys.D:
        raise DomainError(f"index {i} outside 0..{sys.D}")


def b_matrix(sys: RacahSystem, i: int) -> RationalMatrix:
    """B_i from B_{i+1} = (A B_i - a_i B_i - b_{i-1} B_{i-1}) / c_{i+1}, B_0 = I, B_1 = A."""
    _check_index(sys, i)
    return _b_matrices(sys.D)[i]


def b_star_matrix(sys: RacahSystem, i: int) -> RationalMatrix:
    _check_index(sys, i)
    return RationalMatrix.diag(v_table(sys).rows[i])


@dataclass(frozen=True)
class IntersectionTensor:
    D: int
    route: str
    p: Tensor  # p[h][i][j]

    def __getitem__(self, hij: tuple[int, int, int]) -> Fraction:
        h, i, j = hij
        return self.p[h][i][j]

    def cells(self) -> Iterator[tuple[int, int, int, Fraction]]:
        n = self.D + 1
        for h in range(n):
            for i in range(n):
                for j in range(n):
                    yield h, i, j, self.p[h][i][j]

    def invariant_count(self) -> int:
        n = self.D + 1
        return 6 * n**3 + n**2

    def invariant_violations(self) -> Iterator[tuple[str, tuple, Fraction, Fraction]]:
        """Yield (check, index, expected, actual) for every broken invariant."""
        n = self.D + 1
        p = self.p
        for h, i, j, x in self.cells():
            k_h, k_i, k_j = 2 * h + 1, 2 * i + 1, 2 * j + 1
            if x < 0:
                yield "nonnegative", (h, i, j), Fraction(0), x
            if x != p[h][j][i]:
                yield "p^h_ij = p^h_ji", (h, i, j), p[h][j][i], x
            if k_h * x != k_j * p[j][h][i]:
                yield "k_h p^h_ij = k_j p^j_hi", (h, i, j), k_j * p[j][h][i], k_h * x
            if k_h * x != k_i * p[i][j][h]:
                yield "k_h p^h_ij = k_i p^i_jh", (h, i, j), k_i * p[i][j][h], k_h * x
            if not (abs(i - j) <= h <= i + j) and x != 0:
                yield "triangle support", (h, i, j), Fraction(0), x
            if h == 0 and x != (k_i if i == j else 0):
                yield "p^0_ij = delta k_i", (h, i, j), Fraction(k_i if i == j else 0), x
        for h in range(n):
            for i in range(n):
                s = sum(p[h][i], Fraction(0))
                if s != 2 * i + 1:
                    yield "sum_j p^h_ij = k_i", (h, i), Fraction(2 * i + 1), s


def _tensor_from(fn, n: int) -> Tensor:
    return tuple(tuple(tuple(fn(h, i, j) for j in range(n)) for i in range(n)) for h in range(n))


def _matrix_route(sys: RacahSystem) -> Tensor:
    B = _b_matrices(sys.D)
    return _tensor_from(lambda h, i, j: B[i][h, j], sys.size)


@lru_cache(maxsize=None)
def triple_products(D: int) -> tuple[RationalMatrix, ...]:
    """M[h][i, j] = sum_t k_t u_t(theta_h) u_t(theta_i) u_t(theta_j)."""
    sys = build_system(D)
    U = u_table(sys)
    Ut = U.transpose()
    return tuple(Ut.scale_cols([k * u for k, u in zip(sys.k, U.column(h))]) @ U for h in range(D + 1))


def _triple_sum_route(sys: RacahSystem) -> Tensor:
    M = triple_products(sys.D)
    k, nu = sys.k, sys.nu
    return _tensor_from(lambda h, i, j: k[i] * k[j] / nu * M[h][i, j], sys.size)


def w_kt_squared(D: int, h: int, i: int, j: int) -> Fraction:
    """W(D/2, D/2, i, h; j, D/2)^2, which must be rational."""
    half = HalfInt(D)
    w = racah_w(half, half, i, h, j, half)
    sq = w * w
    if not sq.is_rational:
        raise ConsistencyError(f"W^2 kept radicand {sq.radicand} at D={D}, (h,i,j)=({h},{i},{j})")
    return sq.coeff


def _racah_route(sys: RacahSystem) -> Tensor:
    D = sys.D
    return _tensor_from(lambda h, i, j: (2 * i + 1) * (2 * j + 1) * (D + 1) * w_kt_squared(D, h, i, j), sys.size)


@lru_cache(maxsize=None)
def appendix_cone(D: int, i: int, j: int, h: int) -> Fraction:
    """p^h_{i,j} on the cone i <= j <= h <= i+j from the closed form."""
    if not (0 <= i <= j <= h <= min(D, i + j)):
        raise DomainError(f"({i}, {j}, {h}) is not in the cone for D={D}")
    C = factorial_ratio(
        (D - i, D - j, D - h, j + h - i, h + i - j, h, h, D + i + j + 1, D + i + j + 1),
        (D + i + 1, D + j + 1, D + h + 1, i + j + h + 1, i + j - h, h - i, h - i, h - j, h - j, D - h, D - h),
    ).to_fraction()
    series = eval_4f3_unit(HypParams((-j, -i, h - i - j, h - D), (-D - i - j - 1, h - j + 1, h - i + 1)))
    return C * (2 * i + 1) * (2 * j + 1) * (D + 1) * series * series


def appendix_p(D: int, h: int, i: int, j: int) -> Fraction:
    """p^h_{i,j} for any indices: k_h p^h_{i,j} is symmetric in (h, i, j)."""
    x, y, z = sorted((h, i, j))
    if z > x + y:
        return Fraction(0)
    return Fraction(2 * z + 1, 2 * h + 1) * appendix_cone(D, x, y, z)


def _appendix_route(sys: RacahSystem) -> Tensor:
    return _tensor_from(lambda h, i, j: appendix_p(sys.D, h, i, j), sys.size)


_ROUTE_FNS = {
    "matrix": _matrix_route,
    "triple_sum": _triple_sum_route,
    "racah": _racah_route,
    "appendix": _appendix_route,
}


def p_tensor(sys: RacahSystem, route: str = "matrix") -> IntersectionTensor:
    try:
        fn = _ROUTE_FNS[route]
    except KeyError:
        raise DomainError(f"unknown route {route!r}; expected one of {ROUTES}") from None
    return IntersectionTensor(sys.D, route, fn(sys))


def structure_violations(sys: RacahSystem) -> Iterator[tuple[str, tuple, str, str]]:
    """Check B_i B_j = sum_h p^h_ij B_h and the same for B*_i.

    All (i, j) pairs at once: stack the p vectors into a (D+1)^2 x (D+1)
    matrix and multiply it into the B_h (resp. v_h(theta)) flattened row-wise.
    """
    n = sys.size
    B = _b_matrices(sys.D)
    pairs = [(i, j) for i in range(n) for j in range(n)]
    coeffs = RationalMatrix([B[i][h, j] for h in range(n)] for i, j in pairs)
    combos = coeffs @ RationalMatrix([x for row in Bh.rows for x in row] for Bh in B)
    V = v_table(sys)
    combos_star = coeffs @ V
    for r, (i, j) in enumerate(pairs):
        prod = B[i] @ B[j]
        flat = tuple(x for row in prod.rows for x in row)
        if flat != combos.rows[r]:
            yield "B_i B_j = sum_h p^h_ij B_h", (i, j), str(combos.rows[r]), str(flat)
        diag = tuple(x * y for x, y in zip(V.rows[i], V.rows[j]))
        if diag != combos_star.rows[r]:
            yield "B*_i B*_j = sum_h p^h_ij B*_h", (i, j), str(combos_star.rows[r]), str(diag)


def structure_check(sys: RacahSystem) -> bool:
    return next(structure_violations(sys), None) is None
