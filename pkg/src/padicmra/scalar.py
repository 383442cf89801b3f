"""Complex scalars with an exact cyclotomic backend and a float fallback.

An exact scalar is ``p^(m/2) * (c_0 + c_1 z + ... + c_{n-1} z^{n-1}) / d``
where ``z = exp(2 pi i / N)`` is a root of unity of power-of-two conductor
``N = 2n`` and the body is reduced modulo ``z^n + 1``.  Canonical forms are
unique, so equality and zero tests are decidable.

For ``p = 2`` the odd half power is folded into the body using
``sqrt(2) = z_8 - z_8^3``; for odd ``p`` it stays as a separate exponent
and adding scalars of different half-power parity raises ``ValueError``.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import cache
from numbers import Rational

SCALAR_TOL = 1e-12
ACCEPT_TOL = 1e-10

_SQRT2_BODY = (0, 1, 0, -1)  # z8 - z8^3 at conductor 8


def is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


@cache
def _roots(n: int) -> tuple[complex, ...]:
    conductor = 2 * n
    return tuple(cmath.exp(2j * math.pi * k / conductor) for k in range(n))


def _lift(num: tuple[int, ...], n: int) -> tuple[int, ...]:
    """Re-express a body of length len(num) at length n (n a multiple)."""
    m = len(num)
    if m == n:
        return num
    step = n // m
    out = [0] * n
    for i, c in enumerate(num):
        out[i * step] = c
    return tuple(out)


def _negacyclic(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    n = len(a)
    out = [0] * n
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if not bj:
                continue
            k = i + j
            if k < n:
                out[k] += ai * bj
            else:
                out[k - n] -= ai * bj
    return tuple(out)


class Scalar:
    """Immutable complex number; see the module docstring for the encoding."""

    __slots__ = ("_base", "_den", "_half", "_num", "_val")

    # -- construction -----------------------------------------------------

    @classmethod
    def _exact(cls, num, den: int = 1, half: int = 0, base: int = 0) -> Scalar:
        num = tuple(num)
        if den < 0:
            num = tuple(-c for c in num)
            den = -den
        if half:
            if base < 2:
                raise ValueError("half power requires a prime base")
            q, r = divmod(half, 2)
            if q > 0:
                f = base**q
                num = tuple(c * f for c in num)
            elif q < 0:
                den *= base ** (-q)
            half = r
            if half and base == 2:
                n = max(len(num), 4)
                num = _negacyclic(_lift(num, n), _lift(_SQRT2_BODY, n))
                half = 0
        n = len(num)
        if n == 0:
            num, n = (0,), 1
        if not is_power_of_two(n):
            raise ValueError(f"body length {n} is not a power of two")
        while n > 1 and not any(num[1::2]):
            num = num[::2]
            n //= 2
        g = math.gcd(den, *num)
        if g > 1:
            num = tuple(c // g for c in num)
            den //= g
        if not any(num):
            num, den, half = (0,), 1, 0
        self = object.__new__(cls)
        self._num = num
        self._den = den
        self._half = half
        self._base = base if half else 0
        self._val = None
        return self

    @classmethod
    def from_float(cls, value: complex) -> Scalar:
        self = object.__new__(cls)
        self._num = None
        self._den = self._half = self._base = 0
        self._val = complex(value)
        return self

    @classmethod
    def of(cls, value) -> Scalar:
        """Coerce ints, Fractions, floats and complex numbers to a Scalar."""
        if isinstance(value, Scalar):
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return cls._exact((value,))
        if isinstance(value, Rational):
            q = Fraction(value)
            return cls._exact((q.numerator,), q.denominator)
        if isinstance(value, (float, complex)):
            return cls.from_float(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def zero(cls) -> Scalar:
        return cls._exact((0,))

    @classmethod
    def one(cls) -> Scalar:
        return cls._exact((1,))

    @classmethod
    def root_of_unity(cls, k: int, conductor: int) -> Scalar:
        """exp(2 pi i k / conductor); exact iff the reduced conductor is a power of two."""
        if conductor <= 0:
            raise ValueError("conductor must be positive")
        g = math.gcd(k, conductor)
        k, conductor = (k // g) % (conductor // g), conductor // g
        if not is_power_of_two(conductor):
            return cls.from_float(cmath.exp(2j * math.pi * k / conductor))
        if conductor == 1:
            return cls.one()
        n = conductor // 2
        body = [0] * n
        if k < n:
            body[k] = 1
        else:
            body[k - n] = -1
        return cls._exact(body)

    @classmethod
    def sqrt_prime_power(cls, p: int, m: int) -> Scalar:
        """p^(m/2), exactly."""
        return cls._exact((1,), 1, m, p)

    @classmethod
    def from_coeffs(cls, coeffs, conductor: int, half_power: int = 0, prime: int = 0) -> Scalar:
        """Build from rational coefficients of z^0..z^(N/2-1) at conductor N."""
        fr = [Fraction(c) for c in coeffs]
        if conductor < 2 or not is_power_of_two(conductor):
            raise ValueError(f"conductor {conductor} must be a power of two >= 2")
        if len(fr) != conductor // 2:
            raise ValueError(f"expected {conductor // 2} coefficients, got {len(fr)}")
        den = math.lcm(*(q.denominator for q in fr))
        return cls._exact([q.numerator * (den // q.denominator) for q in fr], den, half_power, prime)

    # -- inspection -------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self._num is not None

    @property
    def backend(self) -> str:
        return "exact" if self._num is not None else "float"

    @property
    def conductor(self) -> int:
        self._need_exact()
        return 2 * len(self._num)

    @property
    def half_power(self) -> int:
        return self._half

    @property
    def prime(self) -> int:
        return self._base

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        self._need_exact()
        return tuple(Fraction(c, self._den) for c in self._num)

    def _need_exact(self):
        if self._num is None:
            raise ValueError("operation needs an exact scalar")

    def is_zero(self, tol: float = 0.0) -> bool:
        if self._num is not None:
            return not any(self._num)
        return abs(self._val) <= tol

    def is_rational(self) -> bool:
        return self._num is not None and len(self._num) == 1 and self._half == 0

    def is_real(self, tol: float = SCALAR_TOL) -> bool:
        if self._num is None:
            return abs(self._val.imag) <= tol
        return self == self.conjugate()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._num[0], self._den)

    def __complex__(self) -> complex:
        if self._num is None:
            return self._val
        roots = _roots(len(self._num))
        z = sum(c * w for c, w in zip(self._num, roots) if c) / self._den
        if self._half:
            z *= math.sqrt(self._base) ** self._half
        return complex(z)

    def to_complex(self) -> complex:
        return complex(self)

    def to_float(self) -> Scalar:
        return self if self._num is None else Scalar.from_float(complex(self))

    def __abs__(self) -> float:
        return abs(complex(self))

    # -- arithmetic -------------------------------------------------------

    def conjugate(self) -> Scalar:
        if self._num is None:
            return Scalar.from_float(self._val.conjugate())
        num = self._num
        n = len(num)
        if n == 1:
            return self
        out = [0] * n
        out[0] = num[0]
        for k in range(1, n):
            out[n - k] = -num[k]
        return Scalar._exact(out, self._den, self._half, self._base)

    conj = conjugate

    def abs2(self) -> Scalar:
        """|x|^2 as a Scalar (exact when x is exact)."""
        return self * self.conjugate()

    def __neg__(self) -> Scalar:
        if self._num is None:
            return Scalar.from_float(-self._val)
        return Scalar._exact(tuple(-c for c in self._num), self._den, self._half, self._base)

    def __pos__(self) -> Scalar:
        return self

    def __add__(self, other) -> Scalar:
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        if self._num is None or other._num is None:
            return Scalar.from_float(complex(self) + complex(other))
        if not any(other._num):
            return self
        if not any(self._num):
            return other
        if self._half != other._half or self._base != other._base:
            raise ValueError(
                f"cannot add scalars with half powers {self._half}/{self._base} "
                f"and {other._half}/{other._base}"
            )
        n = max(len(self._num), len(other._num))
        a, b = _lift(self._num, n), _lift(other._num, n)
        da, db = self._den, other._den
        if da == db:
            num = tuple(x + y for x, y in zip(a, b))
            den = da
        else:
            num = tuple(x * db + y * da for x, y in zip(a, b))
            den = da * db
        return Scalar._exact(num, den, self._half, self._base)

    __radd__ = __add__

    def __sub__(self, other) -> Scalar:
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Scalar:
        return Scalar.of(other) - self

    def __mul__(self, other) -> Scalar:
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        if self._num is None or other._num is None:
            return Scalar.from_float(complex(self) * complex(other))
        if self._half and other._half and self._base != other._base:
            raise ValueError("cannot multiply half powers of different primes")
        a, b = self._num, other._num
        if len(a) == 1:
            num = tuple(a[0] * c for c in b)
        elif len(b) == 1:
            num = tuple(b[0] * c for c in a)
        else:
            n = max(len(a), len(b))
            num = _negacyclic(_lift(a, n), _lift(b, n))
        return Scalar._exact(
            num, self._den * other._den, self._half + other._half, self._base or other._base
        )

    __rmul__ = __mul__

    def __truediv__(self, other) -> Scalar:
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        if self._num is None or other._num is None:
            return Scalar.from_float(complex(self) / complex(other))
        return self * other.inverse()

    def __rtruediv__(self, other) -> Scalar:
        return Scalar.of(other) * self.inverse()

    def inverse(self) -> Scalar:
        """Multiplicative inverse; exact only for monomials c * p^(m/2) * z^k."""
        if self._num is None:
            return Scalar.from_float(1 / self._val)
        nz = [(k, c) for k, c in enumerate(self._num) if c]
        if not nz:
            raise ZeroDivisionError("inverse of zero")
        if len(nz) != 1:
            # x^-1 = conj(x) / |x|^2 when |x|^2 is rational
            n2 = self.abs2()
            if n2.is_rational():
                return self.conjugate() * Scalar.of(1 / n2.to_fraction())
            raise ValueError(f"exact inverse of {self} is not supported")
        k, c = nz[0]
        n = len(self._num)
        conductor = 2 * n
        root = Scalar.root_of_unity(-k, conductor)
        q = Fraction(self._den, c)
        inv = root * Scalar._exact((q.numerator,), q.denominator)
        if self._half:
            inv = inv * Scalar.sqrt_prime_power(self._base, -self._half)
        return inv

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = Scalar.one(), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        try:
            other = Scalar.of(other)
        except TypeError:
            return NotImplemented
        if self._num is not None and other._num is not None:
            return (
                self._num == other._num
                and self._den == other._den
                and self._half == other._half
                and self._base == other._base
            )
        return abs(complex(self) - complex(other)) <= SCALAR_TOL

    __hash__ = None

    def close(self, other, tol: float = ACCEPT_TOL) -> bool:
        return abs(complex(self) - complex(Scalar.of(other))) <= tol

    # -- display ----------------------------------------------------------

    def __repr__(self) -> str:
        if self._num is None:
            return f"Scalar.from_float({self._val!r})"
        return f"Scalar({self})"

    def __str__(self) -> str:
        if self._num is None:
            return f"{self._val.real:.17g}{self._val.imag:+.17g}j"
        n = len(self._num)
        conductor = 2 * n
        parts = []
        for k, c in enumerate(self._num):
            if not c:
                continue
            q = Fraction(c, self._den)
            if k == 0:
                parts.append(str(q))
            else:
                mono = f"z{conductor}" + (f"^{k}" if k > 1 else "")
                parts.append(mono if q == 1 else f"-{mono}" if q == -1 else f"{q}*{mono}")
        body = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self._half:
            return f"{self._base}^(1/2)*({body})"
        return body if len(parts) <= 1 else f"({body})"


def as_scalar(value) -> Scalar:
    return Scalar.of(value)
