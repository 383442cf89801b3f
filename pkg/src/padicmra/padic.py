"""Exact p-adic arithmetic on rationals with p-power denominators.

Points of Q_p that appear in the constructions (shifts, ball centers,
character arguments) all have the form ``n / p^e``; this module keeps them
in that form so every operation is exact.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

from .scalar import Scalar

INF = math.inf


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % d for d in range(2, math.isqrt(p) + 1))


def check_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")
    return p


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class PAdicRational:
    """The rational ``num / p**exp`` viewed as a point of Q_p.

    Always stored reduced: ``p`` does not divide ``num`` when ``exp > 0``,
    and zero is ``(0, 0)``.
    """

    __slots__ = ("exp", "num", "p")

    def __init__(self, num: int, exp: int = 0, p: int = 2):
        if exp < 0:
            num *= p ** (-exp)
            exp = 0
        if num == 0:
            exp = 0
        else:
            while exp > 0 and num % p == 0:
                num //= p
                exp -= 1
        self.num = num
        self.exp = exp
        self.p = p

    @classmethod
    def of(cls, value, p: int) -> PAdicRational:
        """Coerce an int, Fraction, string or PAdicRational."""
        if isinstance(value, PAdicRational):
            if value.p != p:
                raise ValueError(f"prime mismatch: {value.p} vs {p}")
            return value
        if isinstance(value, str):
            return cls.parse(value, p)
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return cls(value, 0, p)
        if isinstance(value, Rational):
            q = Fraction(value)
            d, e = q.denominator, 0
            while d % p == 0:
                d //= p
                e += 1
            if d != 1:
                raise ValueError(f"{q} does not have a {p}-power denominator")
            return cls(q.numerator, e, p)
        raise TypeError(f"cannot convert {type(value).__name__} to PAdicRational")

    @classmethod
    def parse(cls, text: str, p: int) -> PAdicRational:
        """Parse ``"n"``, ``"n/d"`` or ``"n/p^e"``."""
        q = parse_rational(text)
        return cls.of(q, p)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> PAdicRational:
        if isinstance(other, PAdicRational):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        return PAdicRational.of(other, self.p)

    def __add__(self, other) -> PAdicRational:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        p = self.p
        e = max(self.exp, other.exp)
        return PAdicRational(
            self.num * p ** (e - self.exp) + other.num * p ** (e - other.exp), e, p
        )

    __radd__ = __add__

    def __neg__(self) -> PAdicRational:
        return PAdicRational(-self.num, self.exp, self.p)

    def __sub__(self, other) -> PAdicRational:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> PAdicRational:
        return self._coerce(other) - self

    def __mul__(self, other) -> PAdicRational:
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return PAdicRational(self.num * other.num, self.exp + other.exp, self.p)

    __rmul__ = __mul__

    def scale(self, k: int) -> PAdicRational:
        """``self * p**k``."""
        return PAdicRational(self.num, self.exp - k, self.p)

    # -- p-adic structure -------------------------------------------------

    def valuation(self) -> float | int:
        if self.num == 0:
            return INF
        if self.exp > 0:
            return -self.exp
        return _vp(self.num, self.p)

    def norm(self) -> Fraction:
        v = self.valuation()
        if v == INF:
            return Fraction(0)
        return Fraction(self.p) ** (-v)

    def frac_part(self) -> PAdicRational:
        if self.exp == 0:
            return PAdicRational(0, 0, self.p)
        return PAdicRational(self.num % self.p**self.exp, self.exp, self.p)

    def is_zero(self) -> bool:
        return self.num == 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.p**self.exp)

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, PAdicRational):
            return self.num == other.num and self.exp == other.exp and self.p == other.p
        if isinstance(other, (int, Rational)):
            return self.to_fraction() == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.exp, self.p))

    def __lt__(self, other) -> bool:
        return self.to_fraction() < self._coerce(other).to_fraction()

    def __le__(self, other) -> bool:
        return self.to_fraction() <= self._coerce(other).to_fraction()

    def __str__(self) -> str:
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{self.p}^{self.exp}"

    def __repr__(self) -> str:
        return f"PAdicRational({self.num}, {self.exp}, p={self.p})"


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*(?:\^\s*(\d+))?)?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"n"``, ``"n/d"`` or ``"n/b^e"`` into a Fraction."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if m.group(3) is not None:
        den = den ** int(m.group(3))
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def _as_fraction(x) -> Fraction:
    if isinstance(x, PAdicRational):
        return x.to_fraction()
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def valuation_and_norm(x, p: int | None = None) -> tuple[float | int, Fraction]:
    """Return ``(gamma, |x|_p)`` with ``|x|_p = p**-gamma``; ``(inf, 0)`` at zero.

    Accepts any rational when ``p`` is given, not only p-power denominators.
    """
    if isinstance(x, PAdicRational) and p is None:
        return x.valuation(), x.norm()
    q = _as_fraction(x)
    if q == 0:
        return INF, Fraction(0)
    g = _vp(q.numerator, p) - _vp(q.denominator, p)
    return g, Fraction(p) ** (-g)


def frac_part(x, p: int | None = None) -> PAdicRational:
    """The p-adic fractional part {x}_p: sum of the negative-power digits."""
    if isinstance(x, PAdicRational) and p is None:
        return x.frac_part()
    q = _as_fraction(x)
    if q == 0:
        return PAdicRational(0, 0, p)
    d, e = q.denominator, 0
    while d % p == 0:
        d //= p
        e += 1
    if e == 0:
        return PAdicRational(0, 0, p)
    # q = n / (p^e d) with gcd(d, p) = 1; write n * d^-1 mod p^e
    pe = p**e
    n = q.numerator * pow(d, -1, pe) % pe
    return PAdicRational(n, e, p)


def additive_character(x, p: int | None = None) -> Scalar:
    """chi_p(x) = exp(2 pi i {x}_p).

    Exact for p = 2; for odd p the value falls back to the float backend
    unless the fractional part vanishes.
    """
    f = frac_part(x, p)
    if f.num == 0:
        return Scalar.one()
    return Scalar.root_of_unity(f.num, f.p**f.exp)


def digit_expansion(x, num_digits: int, p: int | None = None) -> tuple[int, list[int]]:
    """Canonical digits: ``x = p^gamma (x_0 + x_1 p + ...)`` with ``x_0 != 0``.

    Returns ``(gamma, [x_0, ..., x_{num_digits-1}])``.
    """
    if isinstance(x, PAdicRational) and p is None:
        p = x.p
    if num_digits < 1:
        raise ValueError("num_digits must be positive")
    q = _as_fraction(x)
    if q == 0:
        raise ValueError("zero has no canonical digit expansion")
    a, b = q.numerator, q.denominator
    va, vb = _vp(a, p), _vp(b, p)
    gamma = va - vb
    a //= p**va
    b //= p**vb
    mod = p**num_digits
    unit = a * pow(b, -1, mod) % mod
    digits = []
    for _ in range(num_digits):
        unit, d = divmod(unit, p)
        digits.append(d)
    return gamma, digits


def enumerate_shifts(max_denom_exp: int, p: int = 2) -> list[PAdicRational]:
    """All elements of I_p = Q_p/Z_p with denominator at most p^max_denom_exp.

    Ordered by (denominator exponent, numerator); there are p^max_denom_exp.
    """
    out = [PAdicRational(0, 0, p)]
    for e in range(1, max_denom_exp + 1):
        out.extend(PAdicRational(n, e, p) for n in range(1, p**e) if n % p)
    return out


def _reduce_center(num: int, exp: int, gamma: int, p: int) -> tuple[int, int]:
    """Reduce ``num / p^exp`` modulo p^(-gamma) Z_p into ``[0, p^-gamma)``."""
    k = exp - gamma
    if k <= 0:
        return 0, 0
    num %= p**k
    if num == 0:
        return 0, 0
    while exp > 0 and num % p == 0:
        num //= p
        exp -= 1
    return num, exp


class Ball:
    """The ball ``B_gamma(c) = {x : |x - c|_p <= p^gamma} = c + p^-gamma Z_p``.

    The stored center is the canonical representative in ``[0, p^-gamma)``,
    so two equal balls compare and hash equal.
    """

    __slots__ = ("center", "gamma")

    def __init__(self, center, gamma: int, p: int | None = None):
        if not isinstance(center, PAdicRational):
            center = PAdicRational.of(center, p if p is not None else 2)
        num, exp = _reduce_center(center.num, center.exp, gamma, center.p)
        self.center = PAdicRational(num, exp, center.p)
        self.gamma = gamma

    @classmethod
    def _raw(cls, center: PAdicRational, gamma: int) -> Ball:
        self = object.__new__(cls)
        self.center = center
        self.gamma = gamma
        return self

    @property
    def p(self) -> int:
        return self.center.p

    def measure(self) -> Fraction:
        return Fraction(self.p) ** self.gamma

    def contains(self, x) -> bool:
        x = PAdicRational.of(x, self.p)
        v = (x - self.center).valuation()
        return v >= -self.gamma

    def contains_ball(self, other: Ball) -> bool:
        return other.gamma <= self.gamma and self.contains(other.center)

    def intersects(self, other: Ball) -> bool:
        big, small = (self, other) if self.gamma >= other.gamma else (other, self)
        return big.contains(small.center)

    def parent(self, levels: int = 1) -> Ball:
        return Ball(self.center, self.gamma + levels)

    def children(self, gamma: int) -> list[Ball]:
        """The canonical covering of this ball by p^(self.gamma - gamma) balls of radius p^gamma."""
        if gamma > self.gamma:
            raise ValueError("children must be smaller balls")
        p = self.p
        step = PAdicRational(1, self.gamma, p)  # p^-gamma
        return [Ball(self.center + step * t, gamma) for t in range(p ** (self.gamma - gamma))]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ball):
            return NotImplemented
        return self.gamma == other.gamma and self.center == other.center

    def __hash__(self) -> int:
        return hash((self.gamma, self.center.num, self.center.exp, self.center.p))

    def __repr__(self) -> str:
        return f"Ball({self.center}, gamma={self.gamma}, p={self.p})"
