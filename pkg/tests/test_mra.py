import cmath
import math
from fractions import Fraction

import pytest

from padicmra.funcspace import TestFunction, affine_pullback, inner_product, norm2
from padicmra.mra import (
    WaveletIndex,
    check_refinement,
    haar_wavelet,
    kozyrev_coeffs,
    kozyrev_from_refinement,
    kozyrev_gram_functions,
    kozyrev_theta,
    kozyrev_wavelet,
    project_Vj,
    psi0,
    psi0_modulated,
    refinable_phi,
    refinement_residual,
    vj_basis,
)
from padicmra.padic import Ball, PAdicRational
from padicmra.scalar import ACCEPT_TOL, Scalar
from padicmra.verify import gram


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_refinement_identity(p):
    assert check_refinement(p)


def test_refinement_fails_when_a_term_is_dropped():
    residual = refinement_residual(2, omit=(1,))
    assert residual == TestFunction.indicator(Ball(PAdicRational(1, 0, 2), -1))
    assert not check_refinement(3, omit=(0,))


def test_psi0_two_constructions_agree():
    assert psi0() == psi0_modulated()
    # explicit two-ball form: 1 on 2Z_2, -1 on 1 + 2Z_2
    two_balls = TestFunction.indicator(Ball(0, -1)) - TestFunction.indicator(Ball(1, -1))
    assert psi0() == two_balls


def test_haar_wavelet_indexing():
    assert haar_wavelet(0, 0) == psi0()
    assert haar_wavelet(WaveletIndex.make(1, Fraction(1, 2))) == haar_wavelet(1, Fraction(1, 2))
    # psi_{gamma a}(x) = 2^(-gamma/2) psi0(2^gamma x - a): check a point value
    f = haar_wavelet(-2, Fraction(1, 2))
    for x in (Fraction(1, 8), Fraction(5, 2), Fraction(2), Fraction(6)):
        y = x * Fraction(2) ** -2 - Fraction(1, 2)
        assert f(x) == Scalar.sqrt_prime_power(2, 2) * psi0()(y)


def test_plus_shift_convention():
    a = Fraction(1, 4)
    assert haar_wavelet(0, a, plus_shift=True) == haar_wavelet(0, -a)
    # reducing -1/4 to 3/4 in I_2 shifts by a unit, which flips the sign
    assert haar_wavelet(0, a, plus_shift=True) == -haar_wavelet(0, Fraction(3, 4))


def test_haar_orthonormality_small():
    assert inner_product(haar_wavelet(0, 0), haar_wavelet(1, 0)) == 0
    assert norm2(haar_wavelet(-2, Fraction(1, 2))) == 1
    assert inner_product(haar_wavelet(3, Fraction(3, 8)), haar_wavelet(3, Fraction(5, 8))) == 0


def test_wavelet_index_validation():
    with pytest.raises(ValueError):
        WaveletIndex.make(0, Fraction(3, 2))
    with pytest.raises(ValueError):
        WaveletIndex.make(0, 0, branch=2, p=2)
    WaveletIndex.make(0, Fraction(1, 9), branch=2, p=3)


def test_kozyrev_point_values():
    w = kozyrev_theta(3, 1)
    assert w(1).close(Scalar.from_float(cmath.exp(2j * math.pi / 3)), 1e-12)
    assert w(Fraction(1, 3)) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_kozyrev_refinement_form(p):
    for j in range(1, p):
        h = kozyrev_coeffs(p, j)
        tol = 0.0 if p == 2 else ACCEPT_TOL
        assert kozyrev_from_refinement(p, h).equals(kozyrev_theta(p, j), tol)


def test_kozyrev_p2_coefficients_exact():
    h = kozyrev_coeffs(2, 1)
    r2 = Scalar.sqrt_prime_power(2, 1)
    assert h == [r2, -r2]


def test_kozyrev_p3_orthonormal_window():
    items = kozyrev_gram_functions(3, range(-1, 2), 1)
    report = gram([f for _, f in items], [i for i, _ in items])
    assert report.size == 3 * 2 * 3
    assert report.is_identity(ACCEPT_TOL)


def test_kozyrev_p2_is_haar():
    for g in range(-2, 3):
        for a in (0, Fraction(1, 2), Fraction(3, 4)):
            assert kozyrev_wavelet(2, g, 1, a) == haar_wavelet(g, a)


def test_vj_basis_and_projection():
    e = vj_basis(2, 1, Fraction(1, 2))
    assert norm2(e) == 1
    target = TestFunction.indicator(Ball(1, -1))
    coeffs, residual = project_Vj(target, 1)
    assert residual.is_zero()
    assert coeffs == {PAdicRational(1, 1, 2): Scalar.sqrt_prime_power(2, -1)}


def test_projection_kills_finer_detail():
    coeffs, residual = project_Vj(psi0(), 0)
    assert all(c.is_zero() for c in coeffs.values())
    assert residual == psi0()
    # psi0 lives in V_1
    _, residual = project_Vj(psi0(), 1)
    assert residual.is_zero()


def test_vj_nesting():
    # phi in V_0 is a combination of two V_1 elements
    coeffs, residual = project_Vj(refinable_phi(2), 1)
    assert residual.is_zero()
    assert len(coeffs) == 2


def test_dilation_of_scaling_function():
    # phi(2x) is the indicator of B_1, phi(x/2) that of B_-1 = 2 Z_2
    assert affine_pullback(refinable_phi(2), -1, 0) == TestFunction.indicator(Ball(0, 1))
    assert affine_pullback(refinable_phi(2), 1, 0) == TestFunction.indicator(Ball(0, -1))
