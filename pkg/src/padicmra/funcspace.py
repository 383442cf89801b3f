"""Locally constant, compactly supported functions on Q_p.

A :class:`TestFunction` is a finite sum of terms ``c * chi_p(s x) * 1_B(x)``
with ``B`` a ball.  Character-modulated terms keep the algebra closed under
the Fourier transform, so every operation here is exact.

The normal form refines all terms to a common radius on which every
character factor is constant, then coarsens as far as the function allows.
The resulting radius is the parameter of constancy, the balls are the
nonzero cells of the step function, and two functions are equal iff their
normal forms coincide.
"""
from __future__ import annotations

from collections import defaultdict
from collections.abc import Iterable
from fractions import Fraction
from typing import NamedTuple

from .padic import Ball, PAdicRational, _reduce_center, additive_character
from .scalar import SCALAR_TOL, Scalar

FLOAT_ZERO = 1e-13


class MixedPrimeError(ValueError):
    pass


class Term(NamedTuple):
    coeff: Scalar
    mod: PAdicRational
    ball: Ball


def _p_power(p: int, k: int) -> Scalar:
    return Scalar.of(Fraction(p) ** k)


def _drop(c: Scalar) -> bool:
    if c.is_exact:
        return c.is_zero()
    return abs(c.to_complex()) <= FLOAT_ZERO


class TestFunction:
    """Immutable finite sum of character-modulated ball indicators."""

    __test__ = False  # keep pytest from collecting this class
    __slots__ = ("_nf", "p", "terms")

    def __init__(self, p: int, terms: Iterable = ()):
        self.p = p
        clean = []
        for t in terms:
            coeff, mod, ball = t
            coeff = Scalar.of(coeff)
            mod = PAdicRational.of(mod, p)
            if ball.p != p:
                raise MixedPrimeError(f"ball over Q_{ball.p} in a function over Q_{p}")
            clean.append(Term(coeff, mod, ball))
        self.terms = tuple(clean)
        self._nf = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, p: int = 2) -> TestFunction:
        return cls(p)

    @classmethod
    def indicator(cls, ball: Ball, coeff=1, mod=0) -> TestFunction:
        return cls(ball.p, [(coeff, mod, ball)])

    @classmethod
    def unit_ball(cls, p: int = 2) -> TestFunction:
        """Omega(|x|_p), the indicator of Z_p."""
        return cls.indicator(Ball(PAdicRational(0, 0, p), 0))

    # -- algebra ----------------------------------------------------------

    def _same_prime(self, other: TestFunction):
        if not isinstance(other, TestFunction):
            raise TypeError(f"expected TestFunction, got {type(other).__name__}")
        if other.p != self.p:
            raise MixedPrimeError(f"functions over Q_{self.p} and Q_{other.p}")

    def __add__(self, other: TestFunction) -> TestFunction:
        self._same_prime(other)
        return TestFunction(self.p, self.terms + other.terms)

    def __neg__(self) -> TestFunction:
        return TestFunction(self.p, [Term(-t.coeff, t.mod, t.ball) for t in self.terms])

    def __sub__(self, other: TestFunction) -> TestFunction:
        return self + (-other)

    def __mul__(self, c) -> TestFunction:
        c = Scalar.of(c)
        return TestFunction(self.p, [Term(c * t.coeff, t.mod, t.ball) for t in self.terms])

    __rmul__ = __mul__

    def conjugate(self) -> TestFunction:
        return TestFunction(self.p, [Term(t.coeff.conjugate(), -t.mod, t.ball) for t in self.terms])

    def to_float(self) -> TestFunction:
        return TestFunction(self.p, [Term(t.coeff.to_float(), t.mod, t.ball) for t in self.terms])

    @property
    def is_exact(self) -> bool:
        return all(t.coeff.is_exact for t in self.terms)

    # -- normal form ------------------------------------------------------

    def _normal_data(self) -> tuple[int | None, dict]:
        """``(l, {(num, exp): coeff})`` with centers canonical at radius p^l."""
        if self._nf is None:
            self._nf = _normal_data(self.p, self.terms)
        return self._nf

    def normalize(self) -> TestFunction:
        l, cells = self._normal_data()
        p = self.p
        out = TestFunction.__new__(TestFunction)
        out.p = p
        out.terms = tuple(
            Term(c, PAdicRational(0, 0, p), Ball._raw(PAdicRational(n, e, p), l))
            for (n, e), c in sorted(cells.items(), key=lambda kv: Fraction(kv[0][0], p ** kv[0][1]))
        )
        out._nf = self._nf
        return out

    @property
    def constancy(self) -> int | None:
        return self._normal_data()[0]

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(c.is_zero(tol) for c in self._normal_data()[1].values())

    def equals(self, other: TestFunction, tol: float = SCALAR_TOL) -> bool:
        self._same_prime(other)
        return (self - other).is_zero(tol)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TestFunction):
            return NotImplemented
        return self.p == other.p and self.equals(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"TestFunction(p={self.p}, terms={len(self.terms)})"

    def __str__(self) -> str:
        """Normal form as ``c * chi(s x) * 1[B_g(a)] + ...``; modulation omitted when s = 0."""
        parts = []
        for t in self.normalize().terms:
            mod = f" * chi({t.mod} x)" if t.mod.num else ""
            parts.append(f"({t.coeff}){mod} * 1[B_{t.ball.gamma}({t.ball.center})]")
        return " + ".join(parts) if parts else "0"

    # -- analysis ---------------------------------------------------------

    def __call__(self, x) -> Scalar:
        return evaluate(self, x)


def _mod_constancy(mod: PAdicRational, gamma: int) -> int:
    """Largest radius exponent on which chi(mod * x) is constant, capped at gamma."""
    if mod.num == 0:
        return gamma
    return min(gamma, mod.valuation())


def _normal_data(p: int, terms) -> tuple[int | None, dict]:
    live = [t for t in terms if not _drop(t.coeff)]
    if not live:
        return None, {}
    level = min(_mod_constancy(t.mod, t.ball.gamma) for t in live)
    cells: dict = defaultdict(Scalar.zero)
    for coeff, mod, ball in live:
        c = ball.center
        n_sub = p ** (ball.gamma - level)
        if n_sub == 1:
            key = _reduce_center(c.num, c.exp, level, p)
            val = coeff if mod.num == 0 else coeff * additive_character(mod * c)
            cells[key] = cells[key] + val
            continue
        step = PAdicRational(1, ball.gamma, p)
        for t in range(n_sub):
            sub = c + step * t
            key = _reduce_center(sub.num, sub.exp, level, p)
            val = coeff if mod.num == 0 else coeff * additive_character(mod * sub)
            cells[key] = cells[key] + val
    cells = {k: v for k, v in cells.items() if not _drop(v)}
    if not cells:
        return None, {}
    # coarsen while every parent cell is fully covered by equal values
    while True:
        groups: dict = defaultdict(list)
        for (n, e), v in cells.items():
            groups[_reduce_center(n, e, level + 1, p)].append(v)
        if any(len(vs) != p or any(v != vs[0] for v in vs[1:]) for vs in groups.values()):
            break
        cells = {k: vs[0] for k, vs in groups.items()}
        level += 1
    return level, cells


def normalize(f: TestFunction) -> TestFunction:
    """Common-radius step-function form; pointwise equal to ``f`` and idempotent."""
    return f.normalize()


def evaluate(f: TestFunction, x) -> Scalar:
    x = PAdicRational.of(x, f.p)
    total = Scalar.zero()
    for coeff, mod, ball in f.terms:
        if ball.contains(x):
            total = total + (coeff if mod.num == 0 else coeff * additive_character(mod * x))
    return total


def _term_integral(coeff: Scalar, mod: PAdicRational, ball: Ball) -> Scalar:
    # chi(mod x) integrates to zero over a ball on which it is not constant
    if mod.num and mod.valuation() < ball.gamma:
        return Scalar.zero()
    val = coeff * _p_power(ball.p, ball.gamma)
    if mod.num:
        val = val * additive_character(mod * ball.center)
    return val


def haar_integral(f: TestFunction) -> Scalar:
    """Exact integral of ``f`` against Haar measure normalized on Z_p."""
    total = Scalar.zero()
    for t in f.terms:
        total = total + _term_integral(*t)
    return total


def inner_product(f: TestFunction, g: TestFunction) -> Scalar:
    """``<f, g> = int f(x) conj(g(x)) dx``, conjugate-linear in ``g``."""
    f._same_prime(g)
    p = f.p
    lf, cf = f._normal_data()
    lg, cg = g._normal_data()
    if not cf or not cg:
        return Scalar.zero()
    conj_other = lf > lg
    if conj_other:
        lf, cf, lg, cg = lg, cg, lf, cf
    total = Scalar.zero()
    for (n, e), a in cf.items():
        b = cg.get(_reduce_center(n, e, lg, p))
        if b is not None:
            total = total + a * b.conjugate()
    if conj_other:
        total = total.conjugate()
    return total * _p_power(p, lf)


def norm2(f: TestFunction) -> Scalar:
    return inner_product(f, f)


def affine_pullback(f: TestFunction, j: int, a=0, l2_normalize: bool = False) -> TestFunction:
    """``x -> f(p^-j x - a)``, optionally scaled by ``p^(j/2)`` to preserve the L2 norm."""
    p = f.p
    a = PAdicRational.of(a, p)
    out = []
    for coeff, mod, ball in f.terms:
        center = (ball.center + a).scale(j)
        new_mod = mod.scale(-j)
        c = coeff if (mod.num == 0 or a.num == 0) else coeff * additive_character(-(mod * a))
        out.append(Term(c, new_mod, Ball(center, ball.gamma - j)))
    g = TestFunction(p, out)
    if l2_normalize and j:
        g = g * Scalar.sqrt_prime_power(p, j)
    return g


def translate(f: TestFunction, b) -> TestFunction:
    """``x -> f(x + b)``."""
    return affine_pullback(f, 0, -PAdicRational.of(b, f.p))


def reflect(f: TestFunction) -> TestFunction:
    """``x -> f(-x)``."""
    return TestFunction(f.p, [Term(t.coeff, -t.mod, Ball(-t.ball.center, t.ball.gamma)) for t in f.terms])


def modulate(f: TestFunction, s) -> TestFunction:
    """``x -> chi_p(s x) f(x)``."""
    s = PAdicRational.of(s, f.p)
    return TestFunction(f.p, [Term(t.coeff, t.mod + s, t.ball) for t in f.terms])


def fourier(f: TestFunction) -> TestFunction:
    """``F[f](xi) = int chi_p(xi x) f(x) dx``, computed term by term.

    ``c chi(s x) 1_{B_g(a)}`` maps to ``c p^g chi(s a) chi(a xi) 1_{B_-g(-s)}``.
    """
    p = f.p
    out = []
    for coeff, mod, ball in f.terms:
        a = ball.center
        c = coeff * _p_power(p, ball.gamma)
        if mod.num and a.num:
            c = c * additive_character(mod * a)
        out.append(Term(c, a, Ball(-mod, -ball.gamma)))
    return TestFunction(p, out)


def inverse_fourier(f: TestFunction) -> TestFunction:
    return reflect(fourier(f))


def support_ball(f: TestFunction) -> Ball | None:
    """The smallest ball centered at 0 containing the support (None for zero)."""
    l, cells = f._normal_data()
    if l is None:
        return None
    return Ball(PAdicRational(0, 0, f.p), _support_exponent(f.p, l, cells))


def _support_exponent(p: int, l: int, cells) -> int:
    n = l
    for num, exp in cells:
        if num:
            n = max(n, -PAdicRational(num, exp, p).valuation())
    return n


def constancy_and_support(f: TestFunction) -> tuple[int, int]:
    """``(l, N)``: the parameter of constancy and the least N with supp f in B_N."""
    l, cells = f._normal_data()
    if l is None:
        raise ValueError("the zero function has no constancy/support parameters")
    return l, _support_exponent(f.p, l, cells)


def is_lizorkin(f: TestFunction, tol: float = 0.0) -> tuple[bool, dict]:
    """Zero-integral test with a Fourier-side witness.

    The witness records the ball ``B_-N`` around 0 and whether ``F[f]``
    vanishes on it, which holds exactly when the integral is zero.
    """
    integral = haar_integral(f)
    ok = integral.is_zero(tol)
    if f.is_zero(tol):
        return True, {"integral": integral, "ball_gamma": None, "fourier_vanishes": True}
    _, n = constancy_and_support(f)
    ff = fourier(f)
    hole = Ball(PAdicRational(0, 0, f.p), -n)
    vanishes = all(
        c.is_zero(tol) or not hole.intersects(Ball._raw(PAdicRational(num, e, f.p), ff.constancy))
        for (num, e), c in ff._normal_data()[1].items()
    )
    return ok, {"integral": integral, "ball_gamma": -n, "fourier_vanishes": vanishes}


def term_count(f: TestFunction) -> int:
    return len(f._normal_data()[1])
