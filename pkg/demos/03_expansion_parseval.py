"""Expanding a zero-mean test function in a wavelet basis and checking Parseval exactly.

Run:  python3 demos/03_expansion_parseval.py
"""
import random

from padicmra.basisgen import GammaVector, alphas_from_gamma
from padicmra.funcspace import constancy_and_support, haar_integral, norm2, term_count
from padicmra.sampling import random_lizorkin
from padicmra.verify import expand, parseval_report, reconstruct

rng = random.Random(3)
f = random_lizorkin(rng, -3, 2)
print(f"f has {term_count(f)} cells, (constancy, support) = {constancy_and_support(f)}, integral = {haar_integral(f)}")

e = expand(f)
print(f"Haar expansion: {len(e.coeffs)} nonzero coefficients over scales {e.gamma_range}")
for idx, c in e.sorted_items()[:5]:
    print("   ", idx, "->", c)
print("reconstruction is exact:", reconstruct(e) == f)
print("||f||^2 =", norm2(f), "  sum |c|^2 =", e.energy)

fam = alphas_from_gamma(GammaVector.random(2, rng))
e2 = expand(f, fam)
print("non-Haar (s = 2) expansion, Parseval defect:", parseval_report(f, e2).defect)
