import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import frac_p, vp

from padicmra.padic import (
    Ball,
    PAdicRational,
    additive_character,
    check_prime,
    digit_expansion,
    enumerate_shifts,
    frac_part,
    parse_rational,
    valuation_and_norm,
)
from padicmra.scalar import Scalar


def test_valuation_and_norm_examples():
    assert valuation_and_norm(Fraction(1, 4), 2) == (-2, 4)
    assert valuation_and_norm(12, 2) == (2, Fraction(1, 4))
    assert valuation_and_norm(Fraction(3, 2), 2) == (-1, 2)
    assert valuation_and_norm(0, 5) == (math.inf, 0)
    assert valuation_and_norm(Fraction(9, 5), 3) == (2, Fraction(1, 9))


def test_fractional_part_examples():
    assert frac_part(Fraction(-1, 2), 2) == PAdicRational(1, 1, 2)
    assert frac_part(Fraction(7, 4), 2) == PAdicRational(3, 2, 2)
    assert frac_part(5, 2).is_zero()
    # 1/3 is a 2-adic integer
    assert frac_part(Fraction(1, 3), 2).is_zero()
    # 1/6 = (1/2)(1/3) and 1/3 is a unit congruent to 1 mod 2
    assert frac_part(Fraction(1, 6), 2) == PAdicRational(1, 1, 2)


def test_character_values():
    assert additive_character(Fraction(1, 4), 2) == Scalar.root_of_unity(1, 4)
    assert additive_character(Fraction(1, 2), 2) == -1
    assert additive_character(3, 2) == 1
    w = additive_character(Fraction(1, 3), 3)
    assert not w.is_exact and w.close(Scalar.from_float(complex(-0.5, 3**0.5 / 2)), 1e-12)


def test_digit_expansions():
    assert digit_expansion(Fraction(3, 2), 4, 2) == (-1, [1, 1, 0, 0])
    assert digit_expansion(-1, 4, 2) == (0, [1, 1, 1, 1])
    assert digit_expansion(Fraction(1, 3), 4, 2) == (0, [1, 1, 0, 1])
    assert digit_expansion(Fraction(-1, 3), 3, 3) == (-1, [2, 2, 2])
    with pytest.raises(ValueError):
        digit_expansion(0, 4, 2)


def test_enumerate_shifts():
    assert [str(a) for a in enumerate_shifts(2)] == ["0", "1/2^1", "1/2^2", "3/2^2"]
    assert len(enumerate_shifts(4, 2)) == 16
    assert len(enumerate_shifts(2, 3)) == 9
    assert len(set(enumerate_shifts(3, 5))) == 125


def test_prime_check():
    check_prime(7)
    for bad in (0, 1, 4, 9, -3):
        with pytest.raises(ValueError):
            check_prime(bad)


def test_parse_rational():
    assert parse_rational("3/2^4") == Fraction(3, 16)
    assert parse_rational("-5") == -5
    with pytest.raises(ValueError):
        parse_rational("1/0")
    with pytest.raises(ValueError):
        parse_rational("abc")


def test_padic_rational_normalization_and_ops():
    x = PAdicRational(4, 3, 2)
    assert (x.num, x.exp) == (1, 1)
    assert PAdicRational(3, -2, 2) == 12
    assert (x + PAdicRational(1, 1, 2)) == 1
    assert PAdicRational(3, 2, 2) * 4 == 3
    assert PAdicRational(1, 0, 2).scale(-3) == Fraction(1, 8)
    with pytest.raises(ValueError):
        PAdicRational.of(Fraction(1, 3), 2)


def test_ball_canonical_center_and_membership():
    b = Ball(PAdicRational(5, 2, 2), -1)  # 5/4 + 2 Z_2
    assert b == Ball(Fraction(5, 4) + 6, -1)
    assert b.contains(Fraction(13, 4)) and not b.contains(Fraction(7, 4))
    assert b.measure() == Fraction(1, 2)
    assert b.parent().contains_ball(b)
    kids = Ball(0, 1).children(-1)
    assert len(kids) == 4 and len(set(kids)) == 4
    assert all(Ball(0, 1).contains_ball(k) for k in kids)


def test_balls_nested_or_disjoint(rng):
    for _ in range(200):
        a = Ball(Fraction(rng.randrange(64), 2 ** rng.randint(0, 4)), rng.randint(-3, 3))
        b = Ball(Fraction(rng.randrange(64), 2 ** rng.randint(0, 4)), rng.randint(-3, 3))
        if a.intersects(b):
            assert a.contains_ball(b) or b.contains_ball(a)


rationals = st.builds(
    lambda n, e: Fraction(n, 2**e), st.integers(-10**6, 10**6), st.integers(0, 12)
)


@settings(max_examples=100, deadline=None)
@given(rationals)
def test_fractional_part_matches_brute_force(q):
    assert frac_part(q, 2).to_fraction() == frac_p(q, 2)
    v, n = valuation_and_norm(q, 2)
    assert v == vp(q, 2)


@settings(max_examples=100, deadline=None)
@given(rationals, rationals)
def test_ultrametric_inequality(x, y):
    _, nx = valuation_and_norm(x, 2)
    _, ny = valuation_and_norm(y, 2)
    _, ns = valuation_and_norm(x + y, 2)
    assert ns <= max(nx, ny)


@settings(max_examples=100, deadline=None)
@given(rationals, rationals)
def test_character_is_additive(x, y):
    assert additive_character(x + y, 2) == additive_character(x, 2) * additive_character(y, 2)


@settings(max_examples=50, deadline=None)
@given(st.integers(-10**6, 10**6).filter(bool), st.integers(1, 40), st.integers(1, 10))
def test_digit_expansion_reconstructs_modulo(n, d, k):
    q = Fraction(n, d)
    g, digits = digit_expansion(q, k, 2)
    partial = sum(Fraction(dg) * 2**i for i, dg in enumerate(digits)) * Fraction(2) ** g
    assert digits[0] != 0
    assert vp(q - partial, 2) >= g + k
