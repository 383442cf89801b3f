import random
from fractions import Fraction

import oracles
import pytest

from padicmra.basisgen import WaveletFamily, family_wavelet, random_family
from padicmra.funcspace import MixedPrimeError, TestFunction, inner_product, norm2
from padicmra.mra import WaveletIndex, haar_wavelet, psi0, refinable_phi
from padicmra.padic import Ball, enumerate_shifts
from padicmra.sampling import random_cells_function, random_lizorkin
from padicmra.scalar import Scalar
from padicmra.verify import (
    Expansion,
    NotLizorkinError,
    expand,
    expansion_window,
    gram,
    parseval_report,
    reconstruct,
)

I = Scalar.root_of_unity(1, 4)


def test_gram_small_examples():
    rep = gram([refinable_phi(2), psi0()])
    assert rep.matrix == [[1, 0], [0, 1]]
    assert rep.exact_identity and rep.backend == "exact"
    dup = gram([refinable_phi(2), refinable_phi(2)])
    assert dup.matrix == [[1, 1], [1, 1]]
    assert not dup.is_identity()
    assert dup.worst_entry()[:2] in ((0, 1), (1, 0))


def test_gram_haar_112():
    idx = [WaveletIndex(g, a) for g in range(-3, 4) for a in enumerate_shifts(4)]
    rep = gram([haar_wavelet(i) for i in idx], idx)
    assert rep.size == 112 and rep.exact_identity


def test_gram_matches_riemann_oracle():
    rng = random.Random(2)
    funcs = [random_cells_function(rng, -2, 1) for _ in range(4)]
    rep = gram(funcs)
    for i, f in enumerate(funcs):
        for j, g in enumerate(funcs):
            assert abs(complex(rep.matrix[i][j]) - oracles.riemann_inner(f, g)) < 1e-9


def test_gram_is_hermitian_and_parallel_agrees():
    rng = random.Random(9)
    funcs = [random_cells_function(rng, -2, 1) for _ in range(6)]
    serial = gram(funcs)
    parallel = gram(funcs, jobs=2)
    assert serial.matrix == parallel.matrix
    for i in range(6):
        for j in range(6):
            assert serial.matrix[i][j] == serial.matrix[j][i].conjugate()


def test_gram_rejects_mixed_primes():
    with pytest.raises(MixedPrimeError):
        gram([TestFunction.unit_ball(2), TestFunction.unit_ball(3)])


def test_gram_float_backend():
    funcs = [haar_wavelet(g, a).to_float() for g in range(-1, 2) for a in enumerate_shifts(2)]
    rep = gram(funcs)
    assert rep.backend == "float" and rep.is_identity(1e-10)


def test_expand_basis_element():
    e = expand(psi0())
    assert list(e.coeffs.items()) == [(WaveletIndex.make(0, 0), Scalar.one())]
    two_balls = TestFunction.indicator(Ball(0, -1)) - TestFunction.indicator(Ball(1, -1))
    assert expand(two_balls).coeffs == e.coeffs
    assert reconstruct(e) == psi0()


def test_expand_rejects_nonzero_mean():
    with pytest.raises(NotLizorkinError) as info:
        expand(refinable_phi(2))
    assert info.value.integral == 1
    e = expand(refinable_phi(2) * 2 + psi0(), subtract_mean=True)
    # the mean over the support ball Z_2 is removed, leaving psi0
    assert reconstruct(e) == psi0()


def test_empty_expansion_reconstructs_zero():
    e = expand(TestFunction.zero(2))
    assert e.coeffs == {}
    assert reconstruct(e).is_zero()
    assert reconstruct(Expansion(WaveletFamily.haar(), {}, (0, -1))).is_zero()


def test_parseval_two_term_example():
    f = haar_wavelet(1, 0) * 3 - haar_wavelet(-1, Fraction(1, 2)) * (I * 2)
    e = expand(f)
    rep = parseval_report(f, e)
    assert rep.norm2 == 13 and rep.energy == 13 and rep.defect == 0
    assert rep.residual_norm2 == 0
    assert len(e.coeffs) == 2


def test_random_lizorkin_reconstruction_haar_and_families():
    rng = random.Random(17)
    fams = [WaveletFamily.haar(), random_family(1, rng), random_family(2, rng)]
    for fam in fams:
        for _ in range(5):
            f = random_lizorkin(rng, -2, 1)
            e = expand(f, fam)
            assert reconstruct(e) == f
            assert norm2(f) == e.energy


def test_window_widening_adds_only_zeros():
    rng = random.Random(21)
    for fam in (WaveletFamily.haar(), random_family(1, rng)):
        f = random_lizorkin(rng, -2, 1)
        base = expand(f, fam)
        wide = expand(f, fam, extra_scales=2)
        assert wide.coeffs == base.coeffs
        # every element outside the window has zero coefficient
        (lo, hi), bounds = expansion_window(f, fam.s)
        for g in (lo - 1, hi + 1):
            for a in enumerate_shifts(bounds.get(g, max(1 - g, fam.s)) + 1):
                assert inner_product(f, family_wavelet(fam, g, a)) == 0


def test_float_parseval():
    rng = random.Random(33)
    f = random_cells_function(rng, -3, 2, zero_mean=True, exact=False)
    e = expand(f, tol=1e-13)
    rep = parseval_report(f, e)
    assert abs(complex(rep.defect)) < 1e-10
    assert abs(complex(rep.residual_norm2)) < 1e-10
