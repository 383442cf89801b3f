"""All orthonormal wavelet functions psi^(s) built from shifts of psi0.

A family is ``psi^(s)(x) = sum_k alpha_k psi0(x + k/2^s)``, k = 0..2^s-1.
It generates an orthonormal wavelet basis iff the signed circulant ``D``
with first row ``alpha`` is unitary, iff ``alpha = B u_0`` for a unitary
``B`` commuting with the companion matrix ``A``.  Such ``B`` are
``C diag(gamma) C*`` with ``|gamma_r| = 1`` and ``C`` the eigenvector matrix
of ``A``, which gives ``alpha_k = 2^-s (-1)^k sum_r gamma_r
exp(-i pi (2r+1) k / 2^s)``.
"""
from __future__ import annotations

import math
import random
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .funcspace import TestFunction, affine_pullback
from .mra import _pull, psi0
from .padic import PAdicRational
from .scalar import SCALAR_TOL, Scalar

_HALF = Scalar.of(Fraction(1, 2))
_I = Scalar.root_of_unity(1, 4)


class UnitarityError(ValueError):
    """Raised for coefficient vectors whose matrix D is not unitary."""

    def __init__(self, msg: str, entry=None, value=None):
        super().__init__(msg)
        self.entry = entry
        self.value = value


# -- small dense linear algebra over Scalars --------------------------------

Matrix = list  # list of rows of Scalars


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, m, k = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = Scalar.zero()
            for t in range(m):
                if not a[i][t].is_zero() and not b[t][j].is_zero():
                    acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def adjoint(a: Matrix) -> Matrix:
    return [[a[i][j].conjugate() for i in range(len(a))] for j in range(len(a[0]))]


def identity(n: int) -> Matrix:
    return [[Scalar.one() if i == j else Scalar.zero() for j in range(n)] for i in range(n)]


def identity_defect(m: Matrix, tol: float = 0.0) -> tuple[bool, float, float, tuple | None]:
    """``(is_identity, max |off-diagonal|, max |diag - 1|, worst entry)``."""
    off = diag = 0.0
    ok = True
    worst, worst_val = None, -1.0
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            d = x - 1 if i == j else x
            if not d.is_zero(tol):
                ok = False
            mag = abs(d)
            if i == j:
                diag = max(diag, mag)
            else:
                off = max(off, mag)
            if not d.is_zero(tol) and mag > worst_val:
                worst, worst_val = (i, j), mag
    return ok, off, diag, worst


def _tol_for(values) -> float:
    return 0.0 if all(v.is_exact for v in values) else SCALAR_TOL


def matrices_equal(a: Matrix, b: Matrix, tol: float = 0.0) -> bool:
    return all((x - y).is_zero(tol) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


# -- parameter vectors and families -----------------------------------------


def unit_from_angle(theta) -> Scalar:
    """``exp(i theta)``: a float is radians; a Fraction ``q`` means ``theta = q pi``.

    Fractions give exact values when ``exp(i q pi)`` has power-of-two order.
    """
    if isinstance(theta, Fraction) or isinstance(theta, int):
        q = Fraction(theta)
        return Scalar.root_of_unity(q.numerator, 2 * q.denominator)
    return Scalar.from_float(complex(math.cos(theta), math.sin(theta)))


def _is_unit(z: Scalar) -> bool:
    if z.is_exact:
        return z.abs2() == 1
    return abs(abs(z.to_complex()) ** 2 - 1) <= SCALAR_TOL


@dataclass(frozen=True)
class GammaVector:
    """Unit-modulus parameters gamma_0..gamma_{2^s-1}."""

    s: int
    entries: tuple

    def __post_init__(self):
        entries = tuple(Scalar.of(e) for e in self.entries)
        object.__setattr__(self, "entries", entries)
        if self.s < 0 or len(entries) != 2**self.s:
            raise ValueError(f"need 2^{self.s} entries, got {len(entries)}")
        for r, g in enumerate(entries):
            if not _is_unit(g):
                raise ValueError(f"|gamma_{r}| = {abs(g):.12g} is not 1")

    @classmethod
    def from_roots(cls, s: int, ks: Sequence[int], conductor: int) -> GammaVector:
        """Entries ``exp(2 pi i k_r / conductor)``."""
        return cls(s, tuple(Scalar.root_of_unity(k, conductor) for k in ks))

    @classmethod
    def from_angles(cls, s: int, thetas: Sequence) -> GammaVector:
        return cls(s, tuple(unit_from_angle(t) for t in thetas))

    @classmethod
    def ones(cls, s: int) -> GammaVector:
        return cls(s, (Scalar.one(),) * 2**s)

    @classmethod
    def random(cls, s: int, rng: random.Random, exact: bool = True, conductor: int | None = None) -> GammaVector:
        """Seeded random parameters: roots of unity when exact, uniform angles otherwise."""
        n = 2**s
        if exact:
            conductor = conductor or max(8, 2 ** (s + 1))
            return cls.from_roots(s, [rng.randrange(conductor) for _ in range(n)], conductor)
        return cls.from_angles(s, [rng.uniform(-math.pi, math.pi) for _ in range(n)])

    @property
    def is_exact(self) -> bool:
        return all(g.is_exact for g in self.entries)


@dataclass(frozen=True)
class WaveletFamily:
    """Coefficients of ``psi^(s) = sum_k alpha_k psi0(x + k/2^s)``.

    ``s = 0`` with ``alphas = (1,)`` is the Haar family itself.  Validity is
    not enforced on construction so that broken inputs can be diagnosed.
    """

    s: int
    alphas: tuple
    gamma: GammaVector | None = field(default=None, compare=False)

    def __post_init__(self):
        alphas = tuple(Scalar.of(a) for a in self.alphas)
        object.__setattr__(self, "alphas", alphas)
        if self.s < 0 or len(alphas) != 2**self.s:
            raise ValueError(f"need 2^{self.s} coefficients, got {len(alphas)}")

    @classmethod
    def haar(cls) -> WaveletFamily:
        return cls(0, (Scalar.one(),), GammaVector.ones(0))

    @property
    def size(self) -> int:
        return 2**self.s

    @property
    def is_exact(self) -> bool:
        return all(a.is_exact for a in self.alphas)

    def unitarity(self) -> tuple[bool, float, tuple | None, Scalar | None]:
        """``(D unitary, max defect, worst (r, k), worst value of D D* - I)``."""
        d = build_D(self).dense()
        g = matmul(d, adjoint(d))
        ok, off, diag, worst = identity_defect(g, _tol_for(self.alphas))
        value = None
        if worst is not None:
            i, j = worst
            value = g[i][j] - 1 if i == j else g[i][j]
        return ok, max(off, diag), worst, value

    def is_unitary(self) -> bool:
        return self.unitarity()[0]


@dataclass(frozen=True)
class SignedCirculant:
    """Row r is the generator shifted r places right, wrapped entries negated."""

    generator: tuple

    @property
    def size(self) -> int:
        return len(self.generator)

    def entry(self, r: int, k: int) -> Scalar:
        n = self.size
        if k >= r:
            return self.generator[k - r]
        return -self.generator[n + k - r]

    def dense(self) -> Matrix:
        n = self.size
        return [[self.entry(r, k) for k in range(n)] for r in range(n)]


def _zeta(s: int, k: int) -> Scalar:
    """exp(i pi k / 2^s), a root of unity of order dividing 2^(s+1)."""
    return Scalar.root_of_unity(k, 2 ** (s + 1))


def alphas_from_gamma(g: GammaVector) -> WaveletFamily:
    s, n = g.s, 2**g.s
    scale = Scalar.of(Fraction(1, n))
    alphas = []
    for k in range(n):
        acc = Scalar.zero()
        for r, gr in enumerate(g.entries):
            acc = acc + gr * _zeta(s, -(2 * r + 1) * k)
        alphas.append(acc * scale if k % 2 == 0 else -(acc * scale))
    return WaveletFamily(s, tuple(alphas), g)


def gamma_from_alphas(fam: WaveletFamily) -> GammaVector:
    """Inverse of :func:`alphas_from_gamma`; rejects non-unitary families."""
    ok, defect, worst, value = fam.unitarity()
    if not ok:
        raise UnitarityError(
            f"D is not unitary: (D D* - I)[{worst[0]}][{worst[1]}] = {value}", worst, value
        )
    s, n = fam.s, fam.size
    entries = []
    for r in range(n):
        acc = Scalar.zero()
        for k, a in enumerate(fam.alphas):
            term = a * _zeta(s, (2 * r + 1) * k)
            acc = acc + term if k % 2 == 0 else acc - term
        entries.append(acc)
    return GammaVector(s, tuple(entries))


def build_D(fam: WaveletFamily) -> SignedCirculant:
    return SignedCirculant(fam.alphas)


def build_A(s: int) -> SignedCirculant:
    """Companion matrix with ``A e_i = e_{i+1}`` and ``A e_{n-1} = -e_0``; ``A^(2^s) = -I``."""
    n = 2**s
    gen = [Scalar.zero()] * n
    gen[n - 1] = Scalar.of(-1)
    return SignedCirculant(tuple(gen))


def eigen_pairs(s: int) -> list[tuple[Scalar, list[Scalar]]]:
    """Eigenvalues ``-exp(i pi (2r+1)/2^s)`` of A with unit eigenvectors."""
    n = 2**s
    norm = Scalar.sqrt_prime_power(2, -s)
    out = []
    for r in range(n):
        lam = -_zeta(s, 2 * r + 1)
        v = [norm * _zeta(s, -(2 * r + 1) * l) * (1 if l % 2 == 0 else -1) for l in range(n)]
        out.append((lam, v))
    return out


def eigenvector_matrix(s: int) -> Matrix:
    """C, whose columns are the eigenvectors v_r."""
    pairs = eigen_pairs(s)
    n = len(pairs)
    return [[pairs[r][1][l] for r in range(n)] for l in range(n)]


def commutant(g: GammaVector) -> Matrix:
    """``B = C diag(gamma) C*``: unitary and commuting with A."""
    c = eigenvector_matrix(g.s)
    n = len(c)
    cg = [[c[i][j] * g.entries[j] for j in range(n)] for i in range(n)]
    return matmul(cg, adjoint(c))


def psi_s(fam: WaveletFamily) -> TestFunction:
    """``sum_k alpha_k psi0(x + k/2^s)`` in normal form."""
    base = psi0()
    out = TestFunction.zero(2)
    for k, a in enumerate(fam.alphas):
        if a.is_zero():
            continue
        shifted = affine_pullback(base, 0, -PAdicRational(k, fam.s, 2))
        out = out + shifted * a
    return out.normalize()


def shifted_family(fam: WaveletFamily) -> list[TestFunction]:
    """``psi^(s)(x + r/2^s)`` for r = 0..2^s-1 (the rows of D)."""
    f = psi_s(fam)
    return [affine_pullback(f, 0, -PAdicRational(r, fam.s, 2)).normalize() for r in range(fam.size)]


def family_wavelet(fam: WaveletFamily, gamma: int, shift=0, plus_shift: bool = False) -> TestFunction:
    """``2^(-gamma/2) psi^(s)(2^gamma x - a)``."""
    return _pull(_psi_cache(fam), gamma, shift, plus_shift)


_PSI_CACHE: dict = {}


def _psi_cache(fam: WaveletFamily) -> TestFunction:
    key = (fam.s, tuple(str(a) for a in fam.alphas))
    f = _PSI_CACHE.get(key)
    if f is None:
        if len(_PSI_CACHE) > 256:
            _PSI_CACHE.clear()
        f = _PSI_CACHE[key] = psi_s(fam)
    return f


# -- real families ----------------------------------------------------------


def _cos_sin(theta) -> tuple[Scalar, Scalar]:
    u = unit_from_angle(theta)
    c = (u + u.conjugate()) * _HALF
    s = (u - u.conjugate()) * _HALF * (-_I)
    return c, s


def _add_angles(theta, delta_pi: Fraction):
    if isinstance(theta, (Fraction, int)):
        return Fraction(theta) + delta_pi
    return theta + float(delta_pi) * math.pi


REAL_KINDS = ("equal", "opposite", "quarter")


def real_family(s: int, thetas, kind: str | None = None) -> WaveletFamily:
    """Real-coefficient families.

    ``s = 1``: ``(cos t, sin t)``.  ``s = 2``: two angles ``(t1, t2)`` with
    gamma = (e^{i t1}, e^{i t2}, e^{-i t2}, e^{-i t1}); or one angle and a
    ``kind`` naming the one-parameter subfamilies ``t1 = t2`` ("equal"),
    ``t1 = -t2`` ("opposite") and ``t1 = t2 + pi/2`` ("quarter").
    Angles are radians (float) or multiples of pi (Fraction, exact).
    """
    if isinstance(thetas, (int, float, Fraction)):
        thetas = (thetas,)
    thetas = tuple(thetas)
    if s == 1:
        if len(thetas) != 1:
            raise ValueError("s = 1 takes one angle")
        c, sn = _cos_sin(thetas[0])
        fam = WaveletFamily(1, (c, sn))
        gamma = GammaVector(1, (unit_from_angle(_neg(thetas[0])), unit_from_angle(thetas[0])))
    elif s == 2:
        if kind is not None:
            if len(thetas) != 1:
                raise ValueError("named subfamilies take one angle")
            t = thetas[0]
            if kind == "equal":
                thetas = (t, t)
            elif kind == "opposite":
                thetas = (t, _neg(t))
            elif kind == "quarter":
                thetas = (t, _add_angles(t, Fraction(-1, 2)))
            else:
                raise ValueError(f"unknown kind {kind!r}; expected one of {REAL_KINDS}")
        if len(thetas) != 2:
            raise ValueError("s = 2 takes two angles")
        t1, t2 = thetas
        c1, s1 = _cos_sin(t1)
        c2, s2 = _cos_sin(t2)
        inv = Scalar.sqrt_prime_power(2, -3)  # 1 / (2 sqrt 2)
        fam = WaveletFamily(
            2,
            (
                (c1 + c2) * _HALF,
                -(c1 - c2 + s1 + s2) * inv,
                (s1 - s2) * _HALF,
                (c1 - c2 - s1 - s2) * inv,
            ),
        )
        gamma = GammaVector.from_angles(2, (t1, t2, _neg(t2), _neg(t1)))
    else:
        raise ValueError(f"real families are tabulated for s in (1, 2), not {s}")
    check = alphas_from_gamma(gamma)
    tol = 0.0 if fam.is_exact and check.is_exact else SCALAR_TOL
    if not all((a - b).is_zero(tol) for a, b in zip(fam.alphas, check.alphas)):
        raise AssertionError("closed form disagrees with the gamma parametrization")
    if not is_real_family(fam) or not fam.is_unitary():
        raise AssertionError("real family failed its reality/unitarity check")
    alphas = fam.alphas
    if not fam.is_exact:
        # reality was just checked; drop rounding noise in the imaginary parts
        alphas = tuple(Scalar.from_float(complex(a).real) for a in alphas)
    return WaveletFamily(fam.s, alphas, gamma)


def _neg(theta):
    return -theta


def printed_real_family(s: int, thetas, kind: str | None = None) -> WaveletFamily:
    """Coefficients exactly as typeset in the source tables, without checks.

    For ``s = 2`` the typeset two-angle form has the opposite sign on the
    ``psi0(x + 1/4)`` coefficient, and the typeset "equal"/"quarter"
    subfamilies are not unitary; this function exists so tests can show it.
    """
    if isinstance(thetas, (int, float, Fraction)):
        thetas = (thetas,)
    if s == 1:
        c, sn = _cos_sin(thetas[0])
        return WaveletFamily(1, (c, sn))
    if s != 2:
        raise ValueError("printed tables cover s = 1, 2")
    r2 = Scalar.sqrt_prime_power(2, -1)
    inv = Scalar.sqrt_prime_power(2, -3)
    if kind is None:
        c1, s1 = _cos_sin(thetas[0])
        c2, s2 = _cos_sin(thetas[1])
        return WaveletFamily(
            2, ((c1 + c2) * _HALF, (c1 - c2 + s1 + s2) * inv, (s1 - s2) * _HALF, (c1 - c2 - s1 - s2) * inv)
        )
    c, sn = _cos_sin(thetas[0])
    zero = Scalar.zero()
    if kind == "opposite":  # listed first
        return WaveletFamily(2, (c, zero, sn, zero))
    if kind == "equal":  # listed second
        return WaveletFamily(2, (c, sn * r2, zero, -(sn * r2)))
    if kind == "quarter":
        return WaveletFamily(2, ((c - sn) * _HALF, (c + sn) * inv, -((c - sn) * _HALF), zero))
    raise ValueError(f"unknown kind {kind!r}")


def is_real_family(fam: WaveletFamily) -> bool:
    return all(a.is_real() for a in fam.alphas)


def random_family(s: int, rng: random.Random, exact: bool = True) -> WaveletFamily:
    return alphas_from_gamma(GammaVector.random(s, rng, exact))


def parse_gamma_entry(text: str, default_kind: str = "exact") -> tuple[Scalar, str]:
    """Parse one gamma entry.

    ``exact:k/N`` is exp(2 pi i k/N); ``float:z`` a complex literal;
    ``rad:t`` an angle in radians; ``pi:q`` the angle q*pi.  The prefix is
    optional and defaults to ``default_kind``.  Returns ``(value, kind)``.
    """
    from .padic import parse_rational

    kind, sep, body = text.partition(":")
    if not sep:
        kind, body = default_kind, text
    kind = kind.strip().lower()
    body = body.strip()
    if kind == "exact":
        # orders that are not powers of two fall back to a float value
        q = parse_rational(body)
        return Scalar.root_of_unity(q.numerator, q.denominator), kind
    if kind == "float":
        return Scalar.from_float(complex(body.replace("i", "j"))), kind
    if kind == "rad":
        return unit_from_angle(float(body)), kind
    if kind == "pi":
        return unit_from_angle(parse_rational(body)), kind
    raise ValueError(f"unknown gamma entry kind {kind!r}")
