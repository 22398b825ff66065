"""Exact arithmetic in the field Q(i, sqrt 2).

Every number is stored as ``p + q*sqrt(2)`` with ``p`` and ``q`` Gaussian
rationals.  This covers all matrix entries that arise from ZX generators
whose phases are multiples of pi/2 (Hadamard boxes carry 1/sqrt 2, diamonds
carry sqrt 2), so spider identities can be checked with ``==`` instead of a
tolerance.
"""
from __future__ import annotations

from fractions import Fraction
import math
from typing import Union

Rational = Union[int, Fraction]


class Gaussian:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, other: "Gaussian") -> "Gaussian":
        return Gaussian(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Gaussian") -> "Gaussian":
        return Gaussian(self.re - other.re, self.im - other.im)

    def __mul__(self, other: "Gaussian") -> "Gaussian":
        return Gaussian(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    def __neg__(self) -> "Gaussian":
        return Gaussian(-self.re, -self.im)

    def conj(self) -> "Gaussian":
        return Gaussian(self.re, -self.im)

    def inverse(self) -> "Gaussian":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return Gaussian(self.re / n, -self.im / n)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Gaussian)
                and self.re == other.re and self.im == other.im)

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))


class ExactScalar:
    """Element ``p + q*sqrt(2)`` of Q(i, sqrt 2)."""

    __slots__ = ("p", "q")

    def __init__(self, p: Gaussian | Rational = 0, q: Gaussian | Rational = 0):
        self.p = p if isinstance(p, Gaussian) else Gaussian(p)
        self.q = q if isinstance(q, Gaussian) else Gaussian(q)

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, Gaussian):
            return cls(x)
        if isinstance(x, (int, Fraction)):
            return cls(Gaussian(x))
        raise TypeError(f"cannot represent {x!r} exactly")

    # constants
    @classmethod
    def i(cls) -> "ExactScalar":
        return cls(Gaussian(0, 1))

    @classmethod
    def sqrt2(cls) -> "ExactScalar":
        return cls(0, 1)

    @classmethod
    def inv_sqrt2(cls) -> "ExactScalar":
        return cls(0, Fraction(1, 2))

    @classmethod
    def unit_phase(cls, quarter_turns: int) -> "ExactScalar":
        """``exp(i*pi*k/2)`` for integer ``k``."""
        return cls(((Gaussian(1), Gaussian(0, 1), Gaussian(-1), Gaussian(0, -1))[quarter_turns % 4]))

    def __add__(self, other) -> "ExactScalar":
        o = ExactScalar.coerce(other)
        return ExactScalar(self.p + o.p, self.q + o.q)

    __radd__ = __add__

    def __sub__(self, other) -> "ExactScalar":
        o = ExactScalar.coerce(other)
        return ExactScalar(self.p - o.p, self.q - o.q)

    def __rsub__(self, other) -> "ExactScalar":
        return ExactScalar.coerce(other) - self

    def __mul__(self, other) -> "ExactScalar":
        o = ExactScalar.coerce(other)
        two = Gaussian(2)
        return ExactScalar(self.p * o.p + two * self.q * o.q,
                           self.p * o.q + self.q * o.p)

    __rmul__ = __mul__

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(-self.p, -self.q)

    def inverse(self) -> "ExactScalar":
        # (p + q r)(p - q r) = p^2 - 2 q^2, a Gaussian rational
        norm = self.p * self.p - Gaussian(2) * self.q * self.q
        if norm.is_zero():
            raise ZeroDivisionError("inverse of zero")
        inv = norm.inverse()
        return ExactScalar(self.p * inv, -(self.q * inv))

    def __truediv__(self, other) -> "ExactScalar":
        return self * ExactScalar.coerce(other).inverse()

    def is_zero(self) -> bool:
        return self.p.is_zero() and self.q.is_zero()

    def __eq__(self, other: object) -> bool:
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.p == o.p and self.q == o.q

    def __hash__(self) -> int:
        return hash((self.p, self.q))

    def __complex__(self) -> complex:
        return complex(self.p) + math.sqrt(2) * complex(self.q)

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        def g(x: Gaussian) -> str:
            return f"({x.re}{'+' if x.im >= 0 else '-'}{abs(x.im)}i)"
        if self.q.is_zero():
            return f"Exact{g(self.p)}"
        return f"Exact{g(self.p)}+{g(self.q)}*sqrt2"
