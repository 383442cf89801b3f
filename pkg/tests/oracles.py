"""Independent float reference computations used as test oracles.

Everything here works from the raw term list with Fractions and ``cmath``;
it shares no code with the normal-form machinery under test.
"""
import cmath
import math
from fractions import Fraction

import numpy as np


def vp(q: Fraction, p: int):
    if q == 0:
        return math.inf
    v, a, b = 0, q.numerator, q.denominator
    while a % p == 0:
        a //= p
        v += 1
    while b % p == 0:
        b //= p
        v -= 1
    return v


def frac_p(q: Fraction, p: int) -> Fraction:
    """{q}_p by brute force: the unique r in [0,1) with p-power denominator and q - r in Z_p."""
    d, e = q.denominator, 0
    while d % p == 0:
        d //= p
        e += 1
    pe = p**e
    for n in range(pe):
        r = Fraction(n, pe)
        if vp(q - r, p) >= 0:
            return r
    raise AssertionError("no fractional part found")


def chi(q: Fraction, p: int) -> complex:
    return cmath.exp(2j * math.pi * float(frac_p(q, p)))


def _terms(f):
    for coeff, mod, ball in f.terms:
        yield complex(coeff), mod.to_fraction(), ball.center.to_fraction(), ball.gamma


def point_value(f, x: Fraction) -> complex:
    p = f.p
    total = 0j
    for c, s, a, g in _terms(f):
        if vp(x - a, p) >= -g:
            total += c * chi(s * x, p)
    return total


def grid(*functions):
    """``(L, N)`` with every function constant on radius-p^L balls and supported in B_N."""
    lo, hi = math.inf, -math.inf
    for f in functions:
        for _, s, a, g in _terms(f):
            lo = min(lo, g, vp(s, f.p))
            hi = max(hi, g, -vp(a, f.p) if a else g)
    if lo == math.inf:
        return 0, 0
    return int(lo), int(max(hi, lo))


def cell_points(p: int, L: int, N: int):
    step = Fraction(1, p**N) if N >= 0 else Fraction(p ** (-N))
    return [step * t for t in range(p ** (N - L))]


def riemann_inner(f, g) -> complex:
    L, N = grid(f, g)
    p = f.p
    vol = float(Fraction(p) ** L)
    return sum(point_value(f, x) * point_value(g, x).conjugate() for x in cell_points(p, L, N)) * vol


def riemann_integral(f) -> complex:
    L, N = grid(f)
    p = f.p
    return sum(point_value(f, x) for x in cell_points(p, L, N)) * float(Fraction(p) ** L)


def riemann_fourier(f, xi: Fraction) -> complex:
    """``int chi(xi x) f(x) dx`` as a cell sum; zero unless |xi| <= p^-L."""
    L, N = grid(f)
    p = f.p
    if vp(xi, p) < L:
        # chi(xi .) is not constant on the cells; refine until it is
        L = vp(xi, p)
    vol = float(Fraction(p) ** L)
    return sum(point_value(f, x) * chi(xi * x, p) for x in cell_points(p, L, N)) * vol


def random_point(rng, p: int = 2, max_exp: int = 5, max_num: int = 64) -> Fraction:
    return Fraction(rng.randrange(-max_num, max_num + 1), p ** rng.randint(0, max_exp))


# -- numpy references -------------------------------------------------------


def np_signed_circulant(alphas) -> np.ndarray:
    a = np.array([complex(x) for x in alphas])
    n = len(a)
    d = np.zeros((n, n), dtype=complex)
    for r in range(n):
        for k in range(n):
            d[r, k] = a[k - r] if k >= r else -a[n + k - r]
    return d


def np_companion(n: int) -> np.ndarray:
    """A e_i = e_{i+1}, A e_{n-1} = -e_0, as a matrix acting on column vectors."""
    a = np.zeros((n, n), dtype=complex)
    for i in range(n - 1):
        a[i + 1, i] = 1
    a[0, n - 1] = -1
    return a


def np_alphas(gammas) -> np.ndarray:
    g = np.array([complex(x) for x in gammas])
    n = len(g)
    s = int(round(math.log2(n)))
    k = np.arange(n)
    out = np.zeros(n, dtype=complex)
    for r in range(n):
        out += g[r] * np.exp(-1j * np.pi * (2 * r + 1) * k / 2**s)
    return out * (-1.0) ** k / n


def to_np(matrix) -> np.ndarray:
    return np.array([[complex(x) for x in row] for row in matrix])
