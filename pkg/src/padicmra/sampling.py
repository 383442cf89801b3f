"""Seeded random generators for test functions and parameter vectors."""
from __future__ import annotations

import random

from .funcspace import TestFunction
from .padic import Ball, PAdicRational
from .scalar import Scalar


def random_scalar(rng: random.Random, exact: bool = True, conductor: int = 8) -> Scalar:
    """A small Gaussian-integer combination of roots of unity, or a float."""
    if not exact:
        return Scalar.from_float(complex(rng.uniform(-2, 2), rng.uniform(-2, 2)))
    x = Scalar.zero()
    for k in range(conductor):
        c = rng.randint(-2, 2)
        if c:
            x = x + Scalar.root_of_unity(k, conductor) * c
    return x


def random_function(
    rng: random.Random,
    p: int = 2,
    n_terms: int = 4,
    gamma_range: tuple[int, int] = (-3, 2),
    mod_exp: int = 3,
    exact: bool = True,
) -> TestFunction:
    """A sum of modulated ball indicators with random centers, radii and modulations."""
    lo, hi = gamma_range
    terms = []
    for _ in range(n_terms):
        gamma = rng.randint(lo, hi)
        e = rng.randint(0, max(0, -lo))
        center = PAdicRational(rng.randrange(p ** (e + 2)), e, p)
        me = rng.randint(0, mod_exp)
        mod = PAdicRational(rng.randrange(p ** (me + 1)), me, p)
        coeff = random_scalar(rng, exact) if p == 2 or not exact else Scalar.of(rng.randint(-3, 3) or 1)
        terms.append((coeff, mod, Ball(center, gamma)))
    return TestFunction(p, terms)


def random_cells_function(
    rng: random.Random, l: int, n: int, p: int = 2, zero_mean: bool = False, exact: bool = True, density: float = 0.7
) -> TestFunction:
    """A function in ``D^l_N``: random values on the ``p^(N-l)`` cells of ``B_N``.

    With ``zero_mean`` the last cell absorbs minus the sum of the others, so
    the integral is exactly zero.
    """
    if l > n:
        raise ValueError("need l <= N")
    count = p ** (n - l)
    step = PAdicRational(1, n, p)  # cells of B_N are t p^-N + p^-l Z_p
    values = []
    for _ in range(count):
        if rng.random() < density:
            values.append(random_scalar(rng, exact) if exact else Scalar.from_float(complex(rng.gauss(0, 1), rng.gauss(0, 1))))
        else:
            values.append(Scalar.zero())
    if zero_mean:
        total = Scalar.zero()
        for v in values[:-1]:
            total = total + v
        values[-1] = -total
    terms = []
    for t, v in enumerate(values):
        if not v.is_zero():
            terms.append((v, 0, Ball(step * t, l)))
    return TestFunction(p, terms)


def random_lizorkin(rng: random.Random, l: int = -3, n: int = 2, exact: bool = True) -> TestFunction:
    """A nonzero zero-mean function in ``D^l_N`` (default ``D^-3_2``)."""
    while True:
        f = random_cells_function(rng, l, n, zero_mean=True, exact=exact)
        if not f.is_zero():
            return f


def random_unit(rng: random.Random, bound: int = 10**6) -> int:
    """A random odd integer, i.e. a 2-adic unit."""
    return rng.choice((-1, 1)) * (2 * rng.randrange(bound) + 1)
