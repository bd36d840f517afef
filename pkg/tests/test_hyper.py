import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from ktverify.hyper import (
    BalanceViolation,
    DivergentLowerParam,
    HypParams,
    NonTerminating,
    WhippleRoles,
    ZeroDenominator,
    eval_4f3_unit,
    pochhammer,
    termination_index,
    whipple_transform,
)


def naive_4f3(upper, lower):
    """Term-by-term sum with every Pochhammer recomputed from scratch."""
    total = Fraction(0)
    n = 0
    while True:
        num = Fraction(1)
        for a in upper:
            for k in range(n):
                num *= Fraction(a) + k
        if num == 0:
            return total
        den = Fraction(1)
        for b in list(lower) + [1]:
            for k in range(n):
                den *= Fraction(b) + k
        total += num / den
        n += 1


def test_pochhammer_examples():
    assert pochhammer(Fraction(7, 3), 0) == 1
    assert pochhammer(-3, 2) == 6
    assert pochhammer(2, 3) == 24


@pytest.mark.parametrize(
    "upper, N",
    [((-1, 2, -1, 2), 1), ((0, 1, -5, 6), 0), ((-3, -7, Fraction(1, 2), 4), 3)],
)
def test_termination_index(upper, N):
    assert termination_index(HypParams(upper, (1, 1, 1))) == N


def test_non_terminating():
    with pytest.raises(NonTerminating):
        eval_4f3_unit(HypParams((1, 2, 3, Fraction(-1, 2)), (1, 1, 1)))


def test_divergent_lower():
    with pytest.raises(DivergentLowerParam):
        eval_4f3_unit(HypParams((-3, 1, 1, 1), (1, -1, 1)))


def test_lower_negative_fine_before_termination():
    # lower -D is legal because the series stops at n <= D
    assert eval_4f3_unit(HypParams((-2, 3, -2, 3), (1, 4, -2))) == naive_4f3((-2, 3, -2, 3), (1, 4, -2))


@pytest.mark.parametrize("D", range(1, 6))
def test_u0_is_one(D):
    for j in range(D + 1):
        assert eval_4f3_unit(HypParams((0, 1, -j, j + 1), (1, D + 2, -D))) == 1


def test_eval_examples():
    assert eval_4f3_unit(HypParams((-1, 2, -1, 2), (1, 4, -2))) == Fraction(1, 2)
    assert eval_4f3_unit(HypParams((-1, 2, -1, 2), (1, 3, -1))) == Fraction(-1, 3)


params_int = st.integers(-8, 8)
params_frac = st.fractions(min_value=-6, max_value=6, max_denominator=4)


@given(st.integers(0, 7), st.lists(params_frac, min_size=3, max_size=3), st.lists(params_frac, min_size=3, max_size=3))
def test_eval_matches_naive(n, ups, lows):
    upper = [-n, *ups]
    N = termination_index(HypParams(upper, (1, 1, 1)))
    assume(all(b + k != 0 for b in lows for k in range(N)))
    assert eval_4f3_unit(HypParams(upper, lows)) == naive_4f3(upper, lows)


@given(st.integers(0, 6), st.lists(params_int, min_size=3, max_size=3), st.lists(st.integers(1, 9), min_size=3, max_size=3), st.randoms())
def test_permutation_invariance(n, ups, lows, rnd):
    upper = [-n, *ups]
    base = eval_4f3_unit(HypParams(upper, lows))
    rnd.shuffle(upper)
    rnd.shuffle(lows)
    assert eval_4f3_unit(HypParams(upper, lows)) == base


@given(st.lists(params_frac, min_size=3, max_size=3), st.lists(params_frac, min_size=3, max_size=3))
def test_zero_upper_gives_one(ups, lows):
    assert eval_4f3_unit(HypParams([*ups, 0], lows)) == 1


def test_whipple_worked_instance():
    p = HypParams((-1, -1, -1, -1), (1, -5, 1))
    coeff, t = whipple_transform(p, WhippleRoles())
    assert coeff == Fraction(8, 5)
    assert t == HypParams((-1, -1, 2, 2), (1, 4, -2))
    assert eval_4f3_unit(p) == Fraction(4, 5)
    assert eval_4f3_unit(t) == Fraction(1, 2)
    assert eval_4f3_unit(p) == coeff * eval_4f3_unit(t)


def test_whipple_coefficient_closed_forms_D2():
    # (-D-i-1)_i (D-i+1)_i / ((-D-i-j-1)_i (D-i-j+1)_i) at D=2, i=j=1
    D, i, j = 2, 1, 1
    coeff = pochhammer(-D - i - 1, i) * pochhammer(D - i + 1, i) / (pochhammer(-D - i - j - 1, i) * pochhammer(D - i - j + 1, i))
    assert coeff == Fraction(8, 5)
    f = lambda n: Fraction(__import__("math").factorial(n))
    sign = (-1) ** i
    closed = sign * f(D + i + 1) / f(D + 1) * f(D) / f(D - i) * f(D + j + 1) / (sign * f(D + i + j + 1)) * f(D - i - j) / f(D - j)
    assert closed == coeff


def test_whipple_p_zero_identity():
    p = HypParams((0, 3, Fraction(1, 2), 2), (5, Fraction(1, 2), 1))
    coeff, t = whipple_transform(p)
    assert coeff == 1
    assert eval_4f3_unit(t) == eval_4f3_unit(p) == 1


def test_whipple_balance_violation():
    with pytest.raises(BalanceViolation):
        whipple_transform(HypParams((-1, -1, -1, -1), (1, -4, 1)))


def test_whipple_zero_denominator():
    # b1 = 0 makes (b1)_p vanish; balance q + a1 + a2 + 1 = r + b1 + b2 + p
    with pytest.raises(ZeroDenominator):
        whipple_transform(HypParams((-2, 1, 1, 1), (1, 0, 1)))


def test_whipple_roles_select_slots():
    p = HypParams((-1, -1, -1, -1), (-5, 1, 1))
    coeff, t = whipple_transform(p, WhippleRoles((0, 1, 2, 3), (1, 0, 2)))
    assert coeff == Fraction(8, 5)
    assert eval_4f3_unit(p) == coeff * eval_4f3_unit(t)


@given(
    st.integers(0, 5),
    st.lists(st.integers(-7, 7), min_size=5, max_size=5),
    st.sampled_from(list(itertools.permutations(range(4)))),
    st.sampled_from(list(itertools.permutations(range(3)))),
)
def test_whipple_invariance(m, vals, up_perm, lo_perm):
    q, a1, a2, r, b1 = vals
    b2 = q + a1 + a2 + 1 - r - b1 - m
    lhs_lower = (r, b1, b2)
    rhs_lower = (r, 1 + q - b1 - m, 1 + q - b2 - m)
    assume(all(not (-m < b <= 0) for b in lhs_lower + rhs_lower))
    upper, lower = [0] * 4, [0] * 3
    for slot, v in zip(up_perm, (-m, q, a1, a2)):
        upper[slot] = v
    for slot, v in zip(lo_perm, lhs_lower):
        lower[slot] = v
    p = HypParams(upper, lower)
    coeff, t = whipple_transform(p, WhippleRoles(up_perm, lo_perm))
    assert naive_4f3(p.upper, p.lower) == coeff * naive_4f3(t.upper, t.lower)
    assert eval_4f3_unit(p) == coeff * eval_4f3_unit(t)
