"""Haar wavelets on Q_2: the scaling function, psi0, and exact orthonormality.

Run:  python3 demos/01_haar_basics.py
"""
from fractions import Fraction

from padicmra import TestFunction
from padicmra.funcspace import inner_product, norm2
from padicmra.mra import WaveletIndex, check_refinement, haar_wavelet, psi0, refinable_phi
from padicmra.padic import Ball, enumerate_shifts
from padicmra.verify import gram

phi = refinable_phi(2)
print("phi = indicator of Z_2:", phi)
print("refinement identity holds for p = 2, 3, 5:", all(check_refinement(p) for p in (2, 3, 5)))

# psi0 is +1 on 2Z_2 and -1 on 1 + 2Z_2
two_balls = TestFunction.indicator(Ball(0, -1)) - TestFunction.indicator(Ball(1, -1))
print("psi0 equals its two-ball form:", psi0() == two_balls)
print("psi0 at 0, 1, 1/2:", psi0()(0), psi0()(1), psi0()(Fraction(1, 2)))

w = haar_wavelet(2, Fraction(3, 4))
print("||psi_{2, 3/4}||^2 =", norm2(w))
print("<psi_{0,0}, psi_{1,1/2}> =", inner_product(psi0(), haar_wavelet(1, Fraction(1, 2))))

idx = [WaveletIndex(g, a) for g in range(-3, 4) for a in enumerate_shifts(4)]
rep = gram([haar_wavelet(i) for i in idx], idx)
print(f"Gram of {rep.size} Haar wavelets is exactly the identity:", rep.exact_identity)
