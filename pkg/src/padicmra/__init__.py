"""Exact p-adic multiresolution analysis and 2-adic wavelet bases.

Layers, bottom up:

* :mod:`padicmra.scalar` -- exact cyclotomic scalars with a float fallback;
* :mod:`padicmra.padic` -- p-adic rationals, balls, characters;
* :mod:`padicmra.funcspace` -- test functions, integrals, Fourier transform;
* :mod:`padicmra.mra` -- the Haar MRA and Kozyrev wavelets;
* :mod:`padicmra.basisgen` -- every orthonormal family psi^(s) from unit parameters;
* :mod:`padicmra.verify` -- Gram matrices, expansions and Parseval checks.
"""
from .basisgen import (
    GammaVector,
    SignedCirculant,
    UnitarityError,
    WaveletFamily,
    alphas_from_gamma,
    build_A,
    build_D,
    commutant,
    eigen_pairs,
    eigenvector_matrix,
    family_wavelet,
    gamma_from_alphas,
    is_real_family,
    psi_s,
    real_family,
)
from .funcspace import (
    MixedPrimeError,
    TestFunction,
    affine_pullback,
    constancy_and_support,
    fourier,
    haar_integral,
    inner_product,
    inverse_fourier,
    is_lizorkin,
    norm2,
    reflect,
    translate,
)
from .mra import (
    WaveletIndex,
    check_refinement,
    haar_wavelet,
    kozyrev_coeffs,
    kozyrev_theta,
    kozyrev_wavelet,
    project_Vj,
    psi0,
    refinable_phi,
    refinement_residual,
)
from .padic import (
    Ball,
    PAdicRational,
    additive_character,
    digit_expansion,
    enumerate_shifts,
    frac_part,
    valuation_and_norm,
)
from .scalar import ACCEPT_TOL, SCALAR_TOL, Scalar
from .verify import (
    Expansion,
    GramReport,
    NotLizorkinError,
    expand,
    gram,
    parseval_report,
    reconstruct,
)

__all__ = [
    "ACCEPT_TOL",
    "SCALAR_TOL",
    "Ball",
    "Expansion",
    "GammaVector",
    "GramReport",
    "MixedPrimeError",
    "NotLizorkinError",
    "PAdicRational",
    "Scalar",
    "SignedCirculant",
    "TestFunction",
    "UnitarityError",
    "WaveletFamily",
    "WaveletIndex",
    "additive_character",
    "affine_pullback",
    "alphas_from_gamma",
    "build_A",
    "build_D",
    "check_refinement",
    "commutant",
    "constancy_and_support",
    "digit_expansion",
    "eigen_pairs",
    "eigenvector_matrix",
    "enumerate_shifts",
    "expand",
    "family_wavelet",
    "fourier",
    "frac_part",
    "gamma_from_alphas",
    "gram",
    "haar_integral",
    "haar_wavelet",
    "inner_product",
    "inverse_fourier",
    "is_lizorkin",
    "is_real_family",
    "kozyrev_coeffs",
    "kozyrev_theta",
    "kozyrev_wavelet",
    "norm2",
    "parseval_report",
    "project_Vj",
    "psi0",
    "psi_s",
    "real_family",
    "reconstruct",
    "refinable_phi",
    "refinement_residual",
    "reflect",
    "translate",
    "valuation_and_norm",
]
