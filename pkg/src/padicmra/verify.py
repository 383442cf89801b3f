"""Finite-window verification: Gram matrices, expansions, reconstruction, Parseval."""
from __future__ import annotations

import os
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .basisgen import WaveletFamily, family_wavelet
from .funcspace import (
    MixedPrimeError,
    TestFunction,
    constancy_and_support,
    haar_integral,
    inner_product,
    norm2,
    support_ball,
)
from .mra import WaveletIndex
from .padic import Ball, PAdicRational, enumerate_shifts
from .scalar import ACCEPT_TOL, Scalar


class NotLizorkinError(ValueError):
    """The function has nonzero integral, so no wavelet expansion exists."""

    def __init__(self, integral: Scalar):
        super().__init__(f"function has nonzero integral {integral}; expansion needs zero mean")
        self.integral = integral


@dataclass
class GramReport:
    labels: list
    matrix: list
    max_off_diagonal: float
    max_diagonal_deviation: float
    backend: str
    exact_identity: bool

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def max_defect(self) -> float:
        return max(self.max_off_diagonal, self.max_diagonal_deviation)

    def is_identity(self, tol: float | None = None) -> bool:
        if self.backend == "exact" and not tol:
            return self.exact_identity
        return self.max_defect <= (ACCEPT_TOL if tol is None else tol)

    def worst_entry(self) -> tuple[int, int, Scalar] | None:
        worst, best = None, -1.0
        for i, row in enumerate(self.matrix):
            for j, x in enumerate(row):
                d = abs(x - 1) if i == j else abs(x)
                if d > best and (i != j and not x.is_zero() or i == j and x != 1):
                    worst, best = (i, j, x), d
        return worst


def _row(args):
    i, funcs, supports = args
    f, sf = funcs[i], supports[i]
    out = []
    for j in range(i, len(funcs)):
        sg = supports[j]
        if sf is None or sg is None or not sf.intersects(sg):
            out.append(Scalar.zero())
        else:
            out.append(inner_product(f, funcs[j]))
    return out


def _tight_support(f: TestFunction) -> Ball | None:
    """Smallest ball containing the support (centered anywhere)."""
    l, cells = f._normal_data()
    if l is None:
        return None
    keys = list(cells)
    n0, e0 = keys[0]
    c0 = PAdicRational(n0, e0, f.p)
    radius = l
    for n, e in keys[1:]:
        d = PAdicRational(n, e, f.p) - c0
        if d.num:
            radius = max(radius, -d.valuation())
    return Ball(c0, radius)


def gram(functions: Sequence[TestFunction], labels: Sequence | None = None, jobs: int = 1) -> GramReport:
    """All pairwise inner products ``<f_i, f_j>``.

    Pairs with disjoint supports are zero without computation; the upper
    triangle is computed (optionally across ``jobs`` processes) and the
    lower triangle filled by Hermitian symmetry.
    """
    funcs = [f.normalize() for f in functions]
    if funcs:
        p = funcs[0].p
        for f in funcs:
            if f.p != p:
                raise MixedPrimeError(f"mixed primes {p} and {f.p} in Gram input")
    labels = list(labels) if labels is not None else list(range(len(funcs)))
    if len(labels) != len(funcs):
        raise ValueError("labels and functions differ in length")
    supports = [_tight_support(f) for f in funcs]
    n = len(funcs)
    if jobs and jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, os.cpu_count() or 1)) as ex:
            rows = list(ex.map(_row, [(i, funcs, supports) for i in range(n)], chunksize=max(1, n // (4 * jobs))))
    else:
        rows = [_row((i, funcs, supports)) for i in range(n)]
    matrix = [[None] * n for _ in range(n)]
    for i, row in enumerate(rows):
        for k, x in enumerate(row):
            j = i + k
            matrix[i][j] = x
            matrix[j][i] = x.conjugate()
    off = diag = 0.0
    exact = all(f.is_exact for f in funcs)
    ident = True
    for i in range(n):
        for j in range(n):
            x = matrix[i][j]
            if i == j:
                d = x - 1
                diag = max(diag, abs(d))
                ident = ident and d.is_zero()
            else:
                off = max(off, abs(x))
                ident = ident and x.is_zero()
    return GramReport(labels, matrix, off, diag, "exact" if exact else "float", ident)


# -- expansions -------------------------------------------------------------


@dataclass
class Expansion:
    """Wavelet coefficients ``<f, psi_{gamma a}>`` over a finite index window."""

    family: WaveletFamily
    coeffs: dict  # WaveletIndex -> Scalar, nonzero entries only
    gamma_range: tuple[int, int]
    shift_bounds: dict = field(default_factory=dict)  # gamma -> max denominator exponent

    @property
    def energy(self) -> Scalar:
        total = Scalar.zero()
        for c in self.coeffs.values():
            total = total + c * c.conjugate()
        return total

    def sorted_items(self) -> list:
        return sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())


def expansion_window(f: TestFunction, s: int) -> tuple[tuple[int, int], dict]:
    """Scales and shift bounds outside of which every coefficient vanishes.

    For ``f`` constant on balls of radius ``2^l`` and supported in ``B_N``,
    elements at scale ``gamma <= l`` integrate to zero against ``f`` on
    every ball where ``f`` is constant, and for ``gamma > N`` the support of
    ``f`` sits inside one half of a wavelet cell so the zero mean of ``f``
    kills the product.  A scale-``gamma`` element lives on
    ``2^-gamma (a + B_s)``, which meets ``B_N`` only for
    ``|a| <= 2^max(N - gamma, s)``.
    """
    l, n = constancy_and_support(f)
    bounds = {g: max(n - g, s) for g in range(l + 1, n + 1)}
    return (l + 1, n), bounds


def expand(
    f: TestFunction,
    fam: WaveletFamily | None = None,
    subtract_mean: bool = False,
    tol: float = 0.0,
    extra_scales: int = 0,
) -> Expansion:
    """Expand a zero-mean test function in the wavelet basis of ``fam`` (Haar by default).

    ``subtract_mean`` first removes the mean over the smallest ball around 0
    containing the support.  ``extra_scales`` widens the window on both
    sides, which must only add zero coefficients.
    """
    fam = fam or WaveletFamily.haar()
    if f.p != 2:
        raise MixedPrimeError("wavelet families live on Q_2")
    f = f.normalize()
    if f.is_zero(tol):
        return Expansion(fam, {}, (0, -1), {})
    integral = haar_integral(f)
    if not integral.is_zero(tol):
        if not subtract_mean:
            raise NotLizorkinError(integral)
        ball = support_ball(f)
        f = (f - TestFunction.indicator(ball, integral * Scalar.of(1 / ball.measure()))).normalize()
        if f.is_zero(tol):
            return Expansion(fam, {}, (0, -1), {})
    (lo, hi), bounds = expansion_window(f, fam.s)
    lo, hi = lo - extra_scales, hi + extra_scales
    _, n = constancy_and_support(f)
    coeffs = {}
    for g in range(lo, hi + 1):
        bound = max(n - g, fam.s) + extra_scales
        bounds[g] = bound
        for a in enumerate_shifts(bound, 2):
            c = inner_product(f, family_wavelet(fam, g, a))
            if not c.is_zero(tol):
                coeffs[WaveletIndex(g, a)] = c
    return Expansion(fam, coeffs, (lo, hi), dict(sorted(bounds.items())))


def reconstruct(e: Expansion, fam: WaveletFamily | None = None) -> TestFunction:
    fam = fam or e.family
    out = TestFunction.zero(2)
    for idx, c in e.sorted_items():
        out = out + family_wavelet(fam, idx.gamma, idx.shift) * c
    return out.normalize()


@dataclass
class ParsevalReport:
    norm2: Scalar
    energy: Scalar
    defect: Scalar
    residual_norm2: Scalar

    def ok(self, tol: float = 0.0) -> bool:
        return self.defect.is_zero(tol) and self.residual_norm2.is_zero(tol)


def parseval_report(f: TestFunction, e: Expansion) -> ParsevalReport:
    nf = norm2(f)
    energy = e.energy
    residual = (f - reconstruct(e)).normalize()
    return ParsevalReport(nf, energy, nf - energy, norm2(residual))
