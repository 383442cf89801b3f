"""Generating non-Haar orthonormal wavelet families from a vector of unit scalars gamma.

Run:  python3 demos/02_wavelet_families.py
"""
import random
from fractions import Fraction

from padicmra.basisgen import (
    GammaVector,
    alphas_from_gamma,
    family_wavelet,
    gamma_from_alphas,
    psi_s,
    real_family,
    shifted_family,
)
from padicmra.padic import enumerate_shifts
from padicmra.verify import gram

# gamma made of roots of unity keeps everything exact (cyclotomic arithmetic)
g = GammaVector.from_roots(1, [1, 7], 8)
fam = alphas_from_gamma(g)
print("s = 1, gamma = (zeta_8, zeta_8^7)  ->  alpha =", [str(a) for a in fam.alphas])
print("unitary:", fam.is_unitary(), "| round trip recovers gamma:", gamma_from_alphas(fam).entries == g.entries)
print("psi^(1) =", psi_s(fam))

# real families for s = 2, angle given as a rational multiple of pi
for kind in ("equal", "opposite", "quarter"):
    rf = real_family(2, Fraction(1, 8), kind)
    print(f"real family ({kind:8s}):", [f"{complex(a).real:+.6f}" for a in rf.alphas])

rng = random.Random(7)
fam3 = alphas_from_gamma(GammaVector.random(3, rng))
print("random s = 3 family, shift Gram identity:", gram(shifted_family(fam3)).exact_identity)
funcs = [family_wavelet(fam3, gm, a) for gm in range(-1, 2) for a in enumerate_shifts(4)]
print(f"mixed-scale Gram over {len(funcs)} functions is identity:", gram(funcs).exact_identity)
