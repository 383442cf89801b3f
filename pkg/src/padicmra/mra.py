"""The Haar multiresolution analysis on Q_2 and Kozyrev wavelets on Q_p.

Scale convention: ``V_j`` is spanned by ``p^(j/2) phi(p^-j x - a)``,
``a`` in I_p, so larger ``j`` means finer cells (radius ``p^-j``).  Wavelets
are shifted as ``psi(x - a)``; pass ``plus_shift=True`` for ``psi(x + a)``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction

from .funcspace import TestFunction, affine_pullback
from .padic import (
    Ball,
    PAdicRational,
    additive_character,
    check_prime,
    enumerate_shifts,
    frac_part,
)
from .scalar import ACCEPT_TOL, Scalar


@dataclass(frozen=True)
class WaveletIndex:
    """Scale ``gamma``, shift ``a`` in I_p and Kozyrev branch ``j``."""

    gamma: int
    shift: PAdicRational
    branch: int = 1

    def __post_init__(self):
        if not isinstance(self.shift, PAdicRational):
            raise TypeError("shift must be a PAdicRational")
        if self.shift != self.shift.frac_part():
            raise ValueError(f"shift {self.shift} is not in I_p")
        if not 1 <= self.branch <= self.shift.p - 1:
            raise ValueError(f"branch {self.branch} out of range for p={self.shift.p}")

    @classmethod
    def make(cls, gamma: int, shift=0, branch: int = 1, p: int = 2) -> WaveletIndex:
        return cls(gamma, PAdicRational.of(shift, p), branch)

    def sort_key(self):
        return (self.gamma, self.shift.exp, self.shift.num, self.branch)


def refinable_phi(p: int = 2) -> TestFunction:
    """phi(x) = Omega(|x|_p), the indicator of the unit ball."""
    check_prime(p)
    return TestFunction.unit_ball(p)


def refinement_residual(p: int = 2, omit=()) -> TestFunction:
    """``phi(x) - sum_r phi(x/p - r/p)`` with the listed ``r`` left out of the sum."""
    phi = refinable_phi(p)
    rhs = TestFunction.zero(p)
    for r in range(p):
        if r not in omit:
            rhs = rhs + affine_pullback(phi, 1, PAdicRational(r, 1, p))
    return (phi - rhs).normalize()


def check_refinement(p: int = 2, omit=()) -> bool:
    return refinement_residual(p, omit).is_zero()


def psi0() -> TestFunction:
    """The Haar wavelet ``phi(x/2) - phi(x/2 - 1/2)``."""
    phi = refinable_phi(2)
    return (affine_pullback(phi, 1, 0) - affine_pullback(phi, 1, PAdicRational(1, 1, 2))).normalize()


def psi0_modulated() -> TestFunction:
    """The same function written as ``chi_2(x/2) Omega(|x|_2)``."""
    return kozyrev_theta(2, 1)


def _pull(f: TestFunction, gamma: int, shift, plus_shift: bool) -> TestFunction:
    a = PAdicRational.of(shift, f.p)
    if plus_shift:
        a = -a
    # p^(-gamma/2) f(p^gamma x - a) is the pullback with j = -gamma
    return affine_pullback(f, -gamma, a, l2_normalize=True).normalize()


def haar_wavelet(gamma, shift=0, plus_shift: bool = False) -> TestFunction:
    """``psi0_{gamma a}(x) = 2^(-gamma/2) psi0(2^gamma x - a)``.

    ``gamma`` may also be a :class:`WaveletIndex`.
    """
    if isinstance(gamma, WaveletIndex):
        gamma, shift = gamma.gamma, gamma.shift
    return _pull(_PSI0, gamma, shift, plus_shift)


def kozyrev_theta(p: int, j: int) -> TestFunction:
    """``theta_j(x) = chi_p(j x / p) Omega(|x|_p)``."""
    check_prime(p)
    if not 1 <= j <= p - 1:
        raise ValueError(f"branch {j} out of range 1..{p - 1}")
    return TestFunction.indicator(Ball(PAdicRational(0, 0, p), 0), 1, PAdicRational(j, 1, p))


def kozyrev_wavelet(p: int, gamma, branch: int = 1, shift=0, plus_shift: bool = False) -> TestFunction:
    """``p^(-gamma/2) chi_p(j (p^gamma x - a) / p) Omega(|p^gamma x - a|_p)``."""
    if isinstance(gamma, WaveletIndex):
        gamma, branch, shift = gamma.gamma, gamma.branch, gamma.shift
    return _pull(kozyrev_theta(p, branch), gamma, shift, plus_shift)


def kozyrev_coeffs(p: int, j: int) -> list[Scalar]:
    """Refinement coefficients ``h_r = p^(1/2) exp(2 pi i {j r / p}_p)``.

    Also checks that ``p^(-1/2) sum_r h_r phi(x/p - r/p)`` reproduces
    ``theta_j`` (exactly for p = 2, within ``ACCEPT_TOL`` otherwise).
    """
    check_prime(p)
    if not 1 <= j <= p - 1:
        raise ValueError(f"branch {j} out of range 1..{p - 1}")
    root_p = Scalar.sqrt_prime_power(p, 1)
    h = [root_p * additive_character(PAdicRational(j * r, 1, p)) for r in range(p)]
    rebuilt = kozyrev_from_refinement(p, h)
    theta = kozyrev_theta(p, j)
    if not rebuilt.equals(theta, 0.0 if rebuilt.is_exact else ACCEPT_TOL):
        raise AssertionError(f"refinement form of theta_{j} disagrees for p={p}")
    return h


def kozyrev_from_refinement(p: int, h) -> TestFunction:
    """``p^(-1/2) sum_r h_r phi(x/p - r/p)``."""
    phi = refinable_phi(p)
    inv_root = Scalar.sqrt_prime_power(p, -1)
    out = TestFunction.zero(p)
    for r, hr in enumerate(h):
        out = out + affine_pullback(phi, 1, PAdicRational(r, 1, p)) * (inv_root * hr)
    return out


def vj_basis(p: int, j: int, shift) -> TestFunction:
    """``p^(j/2) phi(p^-j x - a)``, the orthonormal basis element of V_j."""
    return affine_pullback(refinable_phi(p), j, shift, l2_normalize=True).normalize()


def project_Vj(f: TestFunction, j: int) -> tuple[dict, TestFunction]:
    """Orthogonal projection onto V_j.

    Returns ``({a: <f, e_a>}, f - P_j f)`` over the shifts ``a`` whose basis
    cells meet the support of ``f``.  The residual vanishes exactly when
    the parameter of constancy of ``f`` is at least ``-j``.
    """
    p = f.p
    l, cells = f._normal_data()
    coeffs: dict = defaultdict(Scalar.zero)
    if l is None:
        return {}, f.normalize()
    cell = -j
    norm = Scalar.sqrt_prime_power(p, j)
    for (n, e), c in cells.items():
        center = PAdicRational(n, e, p)
        if l <= cell:
            a = frac_part(center.scale(-j))
            coeffs[a] = coeffs[a] + c * Scalar.of(Fraction(p) ** l)
        else:
            for sub in Ball(center, l).children(cell):
                a = frac_part(sub.center.scale(-j))
                coeffs[a] = coeffs[a] + c * Scalar.of(Fraction(p) ** cell)
    coeffs = {a: v * norm for a, v in sorted(coeffs.items(), key=lambda kv: (kv[0].exp, kv[0].num))}
    approx = TestFunction.zero(p)
    for a, v in coeffs.items():
        approx = approx + vj_basis(p, j, a) * v
    return coeffs, (f - approx).normalize()


def kozyrev_gram_functions(p: int, gammas, max_denom_exp: int) -> list[tuple[WaveletIndex, TestFunction]]:
    """Kozyrev wavelets over a finite index window, in deterministic order."""
    out = []
    for g in gammas:
        for j in range(1, p):
            for a in enumerate_shifts(max_denom_exp, p):
                idx = WaveletIndex(g, a, j)
                out.append((idx, kozyrev_wavelet(p, idx)))
    return out


_PSI0 = psi0()
