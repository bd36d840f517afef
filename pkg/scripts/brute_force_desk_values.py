"""Recompute the pinned small-D values with sympy, independently of ktverify.

Nothing here imports the package: A is built from the coefficient formulas,
P from a naive term-by-term 4F3 sum, B_i by solving for v_i as an explicit
polynomial, and W from sympy.physics.wigner.racah.

    python scripts/brute_force_desk_values.py
"""
from sympy import Matrix, Rational, eye, symbols, expand
from sympy.physics.wigner import racah


def rf(a, n):
    out = Rational(1)
    for k in range(n):
        out *= a + k
    return out


def f43(upper, lower):
    total, n = Rational(0), 0
    while True:
        num = 1
        for a in upper:
            num *= rf(a, n)
        if num == 0:
            return total
        den = rf(1, n)
        for b in lower:
            den *= rf(b, n)
        total += num / den
        n += 1


def coefficients(D):
    c = [None] + [Rational(3 * (D - i + 1) * i * (D + i + 1), D * (D + 2) * (2 * i + 1)) for i in range(1, D + 1)]
    a = [Rational(3 * i * (i + 1), D * (D + 2)) for i in range(D + 1)]
    b = [Rational(3 * (D - i) * (i + 1) * (D + i + 2), D * (D + 2) * (2 * i + 1)) for i in range(D)]
    return c, a, b


def a_matrix(D):
    c, a, b = coefficients(D)
    A = Matrix.zeros(D + 1, D + 1)
    for i in range(D + 1):
        A[i, i] = a[i]
        if i < D:
            A[i, i + 1] = b[i]
        if i > 0:
            A[i, i - 1] = c[i]
    return A


def p_matrix(D):
    return Matrix(D + 1, D + 1, lambda i, j: (2 * j + 1) * f43([-i, i + 1, -j, j + 1], [1, D + 2, -D]))


def v_polys(D):
    lam = symbols("lam")
    c, a, b = coefficients(D)
    v = [Rational(1), lam]
    for i in range(1, D):
        v.append(expand((lam * v[i] - a[i] * v[i] - b[i - 1] * v[i - 1]) / c[i + 1]))
    return lam, v


def poly_of_matrix(poly, lam, M):
    coeffs = poly.as_poly(lam).all_coeffs() if poly.has(lam) else [poly]
    out = Matrix.zeros(*M.shape)
    for coef in coeffs:
        out = out * M + coef * eye(M.shape[0])
    return out


def main():
    for D in (1, 2):
        A, P = a_matrix(D), p_matrix(D)
        _, a, _ = coefficients(D)
        theta = [3 - 2 * x for x in a]
        lam, v = v_polys(D)
        B = [poly_of_matrix(p, lam, A) for p in v]
        print(f"D={D}")
        print("  theta =", theta)
        print("  A =", A.tolist())
        print("  P =", P.tolist())
        print("  P^2 == (D+1)^2 I:", P * P == (D + 1) ** 2 * eye(D + 1))
        for i, Bi in enumerate(B):
            print(f"  B_{i} =", Bi.tolist())
        print("  p^1_{1,1} =", B[1][1, 1], " p^2_{1,1} =", B[1][2, 1] if D >= 2 else "-")
    half = Rational(1, 2)
    print("W(1/2,1/2,1/2,1/2;0,0) =", racah(half, half, half, half, 0, 0))
    print("W(1/2,1/2,1,1;1,1/2) =", racah(half, half, 1, 1, 1, half))


if __name__ == "__main__":
    main()
