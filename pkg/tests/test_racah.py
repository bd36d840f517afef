import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.physics.wigner import racah as sympy_racah

from ktverify.exact import HalfInt, Surd
from ktverify.racah import (
    NotAdmissible,
    SpinSextuple,
    WIndexFrame,
    all_triads_admissible,
    be_residual,
    be_sides,
    evaluate_frame,
    is_admissible,
    racah_w,
    triangle_delta_sq,
    w_frame,
    w_quarter_closed,
)
from ktverify.verify import SampleSpec, sample_be_tuples

h = Fraction(1, 2)


def sympy_w(*twice):
    """W from sympy's own implementation; it raises on some inadmissible input."""
    try:
        return sympy.nsimplify(sympy_racah(*(sympy.Rational(t, 2) for t in twice)))
    except ValueError:
        return sympy.Integer(0)


def as_sympy(s: Surd):
    return sympy.Rational(s.coeff.numerator, s.coeff.denominator) * sympy.sqrt(s.radicand)


def test_admissible():
    assert is_admissible(h, h, 0)
    assert is_admissible(h, h, 1)
    assert not is_admissible(h, h, h)
    assert not is_admissible(1, 1, 3)
    assert is_admissible(1, 1, 2)


def test_delta_examples():
    # Delta(1/2,1/2,0)^2 = 1! 0! 0! / 2! = 1/2
    assert triangle_delta_sq(h, h, 0).to_fraction() == h
    assert triangle_delta_sq(1, 1, 1).to_fraction() == Fraction(1, 24)
    with pytest.raises(NotAdmissible):
        triangle_delta_sq(1, 1, 3)


def test_w_desk_values():
    assert racah_w(h, h, h, h, 0, 0) == Surd(Fraction(-1, 2))
    assert racah_w(h, h, 1, 1, 1, h) == Surd(Fraction(1, 3))


def test_w_inadmissible_is_zero():
    assert racah_w(h, h, h, h, h, h).is_zero
    assert racah_w(1, 1, 1, 1, 3, 0).is_zero


twice_spins = st.integers(0, 8)


@settings(max_examples=150, deadline=None)
@given(st.tuples(*[twice_spins] * 6))
def test_w_matches_sympy(twice):
    ours = racah_w(*(HalfInt(t) for t in twice))
    assert sympy.simplify(as_sympy(ours) - sympy_w(*twice)) == 0


@settings(max_examples=80, deadline=None)
@given(st.tuples(*[twice_spins] * 6))
def test_w_classical_symmetries(twice):
    a, b, c, d, e, f = (HalfInt(t) for t in twice)
    w = racah_w(a, b, c, d, e, f)
    assert racah_w(b, a, d, c, e, f) == w
    assert racah_w(c, d, a, b, e, f) == w
    assert racah_w(a, c, b, d, f, e) == w


@pytest.mark.parametrize("twice", [(1, 1, 2, 2, 2, 1), (2, 2, 2, 2, 2, 2), (3, 3, 4, 2, 2, 3), (4, 4, 4, 4, 0, 4)])
def test_frame_permutations_agree(twice):
    s = SpinSextuple.from_twice(*twice)
    assert all_triads_admissible(s)
    canon = w_frame(s)
    want = evaluate_frame(s, canon)
    b1, b2, b3 = canon.beta
    for alpha in itertools.permutations(canon.alpha):
        for beta in ((b1, b2, b3), (b1, b3, b2)):
            assert evaluate_frame(s, WIndexFrame(alpha, beta)) == want


@pytest.mark.parametrize("D", range(1, 9))
def test_quarter_closed_form(D):
    half = HalfInt(D)
    for i in range(D + 1):
        for j in range(D + 1):
            w = racah_w(half, half, half, half, i, j)
            assert w.is_rational
            assert w.coeff == w_quarter_closed(D, i, j)


def test_quarter_closed_endpoints():
    # i = j = 0: (-1)^D / (D+1)
    for D in range(1, 6):
        assert w_quarter_closed(D, 0, 0) == Fraction((-1) ** D, D + 1)


def test_be_example():
    lhs, rhs = be_sides(h, h, h, h, 1, 1, h, h, 1)
    assert lhs == rhs
    assert not lhs.is_zero
    assert be_residual(h, h, h, h, 1, 1, h, h, 1).is_zero


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32))
def test_be_sampler_tuples_hold(seed):
    for twice in sample_be_tuples(SampleSpec(seed, 3, 6)):
        a, ap, b, bp, c, cp, e, f, g = twice
        assert all(0 <= t <= 6 for t in twice)
        assert all_triads_admissible(SpinSextuple.from_twice(a, b, f, e, g, c))
        assert all_triads_admissible(SpinSextuple.from_twice(ap, bp, f, e, g, cp))
        assert be_residual(*(HalfInt(t) for t in twice)).is_zero
