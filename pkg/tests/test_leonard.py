from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ktverify.exact import DomainError
from ktverify.leonard import (
    ORTHOGONALITY_RELATIONS,
    build_system,
    matrix_a,
    matrix_a_star,
    matrix_p,
    matrix_p_hyper,
    orthogonality_check,
    orthogonality_gram,
    u_table,
    u_table_hyper,
    v_table,
    v_table_recurrence,
)
from ktverify.matrix import RationalMatrix

F = Fraction


def test_system_d1():
    s = build_system(1)
    assert s.c[1:] == (F(1),)
    assert s.a == (F(0), F(2))
    assert s.b[:-1] == (F(3),)
    assert s.theta == (F(3), F(-1))
    assert s.k == (1, 3)
    assert s.nu == 4


def test_system_d2():
    s = build_system(2)
    assert s.theta == (F(3), F(3, 2), F(-3, 2))
    assert s.a == (0, F(3, 4), F(9, 4))
    assert s.c[1:] == (F(1), F(3, 4))
    assert s.b[:-1] == (F(3), F(5, 4))


def test_bad_d():
    with pytest.raises(DomainError):
        build_system(0)


@pytest.mark.parametrize("D", range(1, 13))
def test_row_sums_and_k(D):
    s = build_system(D)
    for i in range(D + 1):
        assert s.c[i] + s.a[i] + s.b[i] == 3
        assert s.k[i] == 2 * i + 1
    assert sum(s.k) == s.nu == (D + 1) ** 2
    assert s.theta[0] == 3 and s.theta == tuple(sorted(s.theta, reverse=True))
    assert matrix_a(s).is_irreducible_tridiagonal()


def test_p_d1():
    assert matrix_p(build_system(1)) == RationalMatrix([[1, 3], [1, -1]])


def test_u_d2():
    # hand-computed from v_2(x) = ((x - 3/4) x - 3) / (3/4) and k_2 = 5
    assert u_table(build_system(2)).rows == ((1, 1, 1), (1, F(1, 2), F(-1, 2)), (1, F(-1, 2), F(1, 10)))


@pytest.mark.parametrize("D", range(1, 16))
def test_routes_agree(D):
    s = build_system(D)
    assert u_table(s) == u_table_hyper(s)
    assert v_table(s) == v_table_recurrence(s)
    assert matrix_p(s) == matrix_p_hyper(s)


@pytest.mark.parametrize("D", range(1, 16))
def test_u_symmetric(D):
    U = u_table(build_system(D))
    assert U == U.T


@pytest.mark.parametrize("D", [1, 2, 3, 7, 12])
def test_leonard_relations(D):
    s = build_system(D)
    A, As, P = matrix_a(s), matrix_a_star(s), matrix_p(s)
    n = s.size
    assert P @ P == RationalMatrix.identity(n).scale(s.nu)
    assert P @ A == As @ P
    assert P @ As == A @ P


@pytest.mark.parametrize("D", range(1, 11))
@pytest.mark.parametrize("rel", ORTHOGONALITY_RELATIONS)
def test_orthogonality(D, rel):
    assert orthogonality_check(build_system(D), rel)


def test_orthogonality_d1_gram():
    got, want = orthogonality_gram(build_system(1), "u-first")
    assert got == want
    assert got[1, 1] == F(4, 3)
    with pytest.raises(DomainError):
        orthogonality_gram(build_system(1), "nope")


def sympy_p(D):
    """P from eigenvectors of A computed by sympy, normalized so column 0 is all ones."""
    s = build_system(D)
    A = sympy.Matrix(D + 1, D + 1, lambda i, j: sympy.Rational(str(matrix_a(s)[i, j])))
    rows = []
    for th in s.theta:
        # left eigenvector x with x A = th x, scaled so x_0 = 1, gives row (v_j(th))_j
        (x,) = (A.T - sympy.Rational(str(th)) * sympy.eye(D + 1)).nullspace()
        x = x / x[0]
        rows.append([F(str(e)) for e in x])
    return RationalMatrix(rows)


@settings(max_examples=6, deadline=None)
@given(st.integers(1, 7))
def test_p_matches_sympy_eigenvectors(D):
    assert matrix_p(build_system(D)) == sympy_p(D)
