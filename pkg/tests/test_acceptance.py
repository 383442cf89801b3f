"""Acceptance criteria 1-10.

Each test carries ``@pytest.mark.acceptance(n, title)``; the conftest prints
one PASS/FAIL line per criterion at the end of the run.
"""
import math
import random
import time
from fractions import Fraction

import oracles
import pytest

from padicmra.basisgen import (
    REAL_KINDS,
    GammaVector,
    UnitarityError,
    WaveletFamily,
    alphas_from_gamma,
    build_A,
    commutant,
    family_wavelet,
    gamma_from_alphas,
    is_real_family,
    matmul,
    matrices_equal,
    psi_s,
    real_family,
    shifted_family,
)
from padicmra.funcspace import (
    TestFunction,
    constancy_and_support,
    fourier,
    inner_product,
    norm2,
    reflect,
    translate,
)
from padicmra.mra import (
    WaveletIndex,
    check_refinement,
    haar_wavelet,
    kozyrev_coeffs,
    kozyrev_from_refinement,
    kozyrev_theta,
    kozyrev_wavelet,
    psi0,
    refinable_phi,
)
from padicmra.padic import Ball, enumerate_shifts
from padicmra.sampling import random_function, random_lizorkin, random_unit
from padicmra.scalar import ACCEPT_TOL, Scalar
from padicmra.verify import expand, gram, reconstruct

SEED = 20240607


@pytest.mark.acceptance(1, "refinement identity for p in {2,3,5}")
def test_criterion_1_refinement():
    start = time.perf_counter()
    for p in (2, 3, 5):
        assert check_refinement(p)
    assert time.perf_counter() - start < 1.0


@pytest.mark.acceptance(2, "Haar Gram of 112 wavelets is the exact identity")
def test_criterion_2_haar_gram():
    start = time.perf_counter()
    idx = [WaveletIndex(g, a) for g in range(-3, 4) for a in enumerate_shifts(4)]
    assert len(idx) == 112
    rep = gram([haar_wavelet(i) for i in idx], idx)
    assert rep.backend == "exact"
    assert rep.exact_identity
    assert all(rep.matrix[i][j] == (1 if i == j else 0) for i in range(112) for j in range(112))
    assert time.perf_counter() - start < 60.0


def _check_family(g: GammaVector, s: int):
    exact = g.is_exact
    tol = 0.0 if exact else ACCEPT_TOL
    fam = alphas_from_gamma(g)
    ok, defect, _, _ = fam.unitarity()
    assert ok and (defect == 0 if exact else defect < ACCEPT_TOL)
    a, b = build_A(s).dense(), commutant(g)
    assert matrices_equal(matmul(a, b), matmul(b, a), tol)
    shift_rep = gram(shifted_family(fam))
    assert shift_rep.size == 2 ** s
    mixed = [family_wavelet(fam, gm, sh) for gm in range(-2, 3) for sh in enumerate_shifts(s + 2)]
    mixed_rep = gram(mixed)
    if exact:
        assert shift_rep.exact_identity and mixed_rep.exact_identity
    else:
        assert shift_rep.max_defect < ACCEPT_TOL and mixed_rep.max_defect < ACCEPT_TOL


@pytest.mark.acceptance(3, "families for s in {1,2,3}: D unitary, AB=BA, shift and mixed-scale Gram identity")
def test_criterion_3_families():
    start = time.perf_counter()
    rng = random.Random(SEED)
    for s in (1, 2, 3):
        for _ in range(50):
            _check_family(GammaVector.random(s, rng, exact=True), s)
        for _ in range(10):
            _check_family(GammaVector.random(s, rng, exact=False), s)
    assert time.perf_counter() - start < 300.0


@pytest.mark.acceptance(4, "closed forms: s=1 gives (cos t, sin t); real s=2 kinds are real and unitary")
def test_criterion_4_closed_forms():
    rng = random.Random(SEED + 4)
    for _ in range(20):
        t = rng.uniform(-math.pi, math.pi)
        fam = alphas_from_gamma(GammaVector.from_angles(1, (-t, t)))
        a0, a1 = (complex(a) for a in fam.alphas)
        assert abs(a0 - math.cos(t)) < 1e-12
        assert abs(a1 - math.sin(t)) < 1e-12
    for kind in REAL_KINDS:
        for theta in (rng.uniform(-math.pi, math.pi), Fraction(1, 8), Fraction(-3, 4)):
            fam = real_family(2, theta, kind)
            assert is_real_family(fam)
            assert fam.is_unitary()
            if isinstance(theta, Fraction):
                assert fam.is_exact


@pytest.mark.acceptance(5, "all-ones gamma gives alpha = e0 and psi_s = psi0 for s=1..4")
def test_criterion_5_identity_degeneration():
    for s in (1, 2, 3, 4):
        fam = alphas_from_gamma(GammaVector.ones(s))
        assert fam.alphas[0] == 1
        assert all(a.is_zero() for a in fam.alphas[1:])
        assert len(fam.alphas) == 2 ** s
        assert psi_s(fam) == psi0()


@pytest.mark.acceptance(6, "Kozyrev refinement form equals direct definition; p=2 is Haar")
def test_criterion_6_kozyrev():
    for p in (2, 3, 5):
        for j in range(1, p):
            lhs = kozyrev_from_refinement(p, kozyrev_coeffs(p, j))
            rhs = kozyrev_theta(p, j)
            if p == 2:
                assert lhs == rhs
            else:
                assert lhs.equals(rhs, ACCEPT_TOL)
                # independent pointwise check at one point per cell
                L, N = oracles.grid(lhs, rhs)
                for x in oracles.cell_points(p, L, N):
                    assert abs(oracles.point_value(lhs, x) - oracles.point_value(rhs, x)) < ACCEPT_TOL
    assert kozyrev_theta(2, 1) == psi0()
    for g in range(-3, 4):
        for a in enumerate_shifts(3):
            assert kozyrev_wavelet(2, g, 1, a) == haar_wavelet(g, a)


@pytest.mark.acceptance(7, "Fourier: Omega fixed, balls, double transform, Plancherel, support swap")
def test_criterion_7_fourier():
    rng = random.Random(SEED + 7)
    omega = TestFunction.unit_ball(2)
    assert fourier(omega) == omega
    for k in range(-4, 5):
        delta = TestFunction.indicator(Ball(0, k))
        assert fourier(delta) == TestFunction.indicator(Ball(0, -k)) * Scalar.of(Fraction(2) ** k)
    for _ in range(100):
        f, g = random_function(rng), random_function(rng)
        assert inner_product(fourier(f), fourier(g)) == inner_product(f, g)
        assert fourier(fourier(f)) == reflect(f)
    for _ in range(50):
        f = random_function(rng)
        if f.is_zero():
            continue
        l, n = constancy_and_support(f)
        l2, n2 = constancy_and_support(fourier(f))
        assert l2 >= -n and n2 <= -l


@pytest.mark.acceptance(8, "100 Lizorkin functions in D^-3_2 reconstruct exactly with Parseval")
def test_criterion_8_expansion():
    start = time.perf_counter()
    rng = random.Random(SEED + 8)
    for _ in range(100):
        f = random_lizorkin(rng, -3, 2)
        e = expand(f)
        assert reconstruct(e) == f
        assert norm2(f) == e.energy
    assert time.perf_counter() - start < 120.0


@pytest.mark.acceptance(9, "periodicity of phi and sign flip of psi0 under unit shifts")
def test_criterion_9_symmetry():
    rng = random.Random(SEED + 9)
    phi, psi = refinable_phi(2), psi0()
    shifts = [1, -1] + [random_unit(rng) for _ in range(20)]
    for xi in shifts:
        assert xi % 2 == 1
        assert translate(phi, xi) == phi
        assert translate(psi, xi) == -psi


@pytest.mark.acceptance(10, "negative control: alpha = (1/sqrt2, i/sqrt2) is rejected")
def test_criterion_10_negative_control():
    r = Scalar.sqrt_prime_power(2, -1)
    fam = WaveletFamily(1, (r, r * Scalar.root_of_unity(1, 4)))
    ok, defect, _, _ = fam.unitarity()
    assert not ok and defect > 0
    with pytest.raises(UnitarityError):
        gamma_from_alphas(fam)
    rep = gram(shifted_family(fam))
    assert rep.max_off_diagonal > 0
    assert not rep.is_identity()
