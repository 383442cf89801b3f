"""The exact Fourier transform on test functions.

Run:  python3 demos/04_fourier.py
"""
import random

from padicmra import TestFunction
from padicmra.funcspace import constancy_and_support, fourier, inner_product, reflect
from padicmra.mra import psi0
from padicmra.padic import Ball
from padicmra.sampling import random_function

omega = TestFunction.unit_ball(2)
print("F[1_{Z_2}] = 1_{Z_2}:", fourier(omega) == omega)
print("F[1_{B_2}] =", fourier(TestFunction.indicator(Ball(0, 2))))
print("F[psi0] =", fourier(psi0()))

rng = random.Random(11)
f, g = random_function(rng), random_function(rng)
print("Plancherel <Ff, Fg> = <f, g>:", inner_product(fourier(f), fourier(g)) == inner_product(f, g))
print("F[F[f]] = f(-x):", fourier(fourier(f)) == reflect(f))
print("(constancy, support) of f:", constancy_and_support(f), " of F[f]:", constancy_and_support(fourier(f)))
