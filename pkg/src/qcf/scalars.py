"""Scalar fields used throughout the package.

Two interchangeable fields are supported:

* exact mode: :class:`fractions.Fraction` (arbitrary precision rationals);
* floating mode: Python ``complex`` (or ``float``), IEEE double precision.

All higher-level routines are written against the plain arithmetic
operators, so passing Fractions gives exact results and passing floats or
complex numbers gives floating point results.  :class:`ScaledValue` is a
power-of-two scaled complex number used by forward recurrences that would
otherwise overflow.
"""
from __future__ import annotations

import cmath
import math
import operator
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

BigRational = Fraction

EPS = 2.0 ** -52

_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat(x, den=None) -> Fraction:
    """Coerce ``x`` (int, str like ``"1/3"``, Fraction, float) to a Fraction."""
    if den is not None:
        return Fraction(x, den)
    return Fraction(x)


def rat_arith(op: str, x: Fraction, y: Fraction) -> Fraction:
    """Exact rational arithmetic; ``op`` is one of add, sub, mul, div."""
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    if op == "div" and y == 0:
        raise DomainError("division by zero in exact identity check")
    return fn(Fraction(x), Fraction(y))


def is_exact(*values) -> bool:
    """True when every value is an int or a Fraction."""
    return all(isinstance(v, (int, Fraction)) and not isinstance(v, bool)
               for v in values)


def to_complex(x) -> complex:
    return complex(x)


def check_finite(x, what="value"):
    """Raise if a floating value is NaN or infinite; exact values pass."""
    if isinstance(x, (int, Fraction)):
        return x
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ArithmeticError(f"non-finite {what}: {x!r}")
    return x


def close(x, y, rtol=1e-12, atol=0.0) -> bool:
    """Equality in exact mode, closeness in floating mode."""
    if is_exact(x, y):
        return x == y
    return abs(x - y) <= atol + rtol * max(abs(x), abs(y))


def sqrt(x):
    """Square root that stays exact for perfect-square rationals.

    Floating inputs use the principal branch (``cmath.sqrt`` for negative or
    complex arguments, ``math.sqrt`` otherwise).
    """
    if is_exact(x):
        x = Fraction(x)
        if x >= 0:
            n, d = x.numerator, x.denominator
            rn, rd = math.isqrt(n), math.isqrt(d)
            if rn * rn == n and rd * rd == d:
                return Fraction(rn, rd)
            return math.sqrt(x)
        return cmath.sqrt(float(x))
    if isinstance(x, complex) or x < 0:
        return cmath.sqrt(x)
    return math.sqrt(x)


@dataclass(frozen=True)
class ScaledValue:
    """The number ``mantissa * 2**exponent``.

    After :func:`scaled_normalize` the mantissa is 0 or has modulus in [1, 2).
    """

    mantissa: complex
    exponent: int

    def value(self) -> complex:
        """Unscaled value (may overflow to inf or underflow to 0)."""
        if self.mantissa == 0:
            return 0j
        return complex(_ldexp_sat(self.mantissa.real, self.exponent),
                       _ldexp_sat(self.mantissa.imag, self.exponent))

    def __mul__(self, other: ScaledValue) -> ScaledValue:
        return scaled_normalize(self.mantissa * other.mantissa,
                                self.exponent + other.exponent)

    def __truediv__(self, other: ScaledValue) -> ScaledValue:
        if other.mantissa == 0:
            raise ZeroDivisionError("division by a zero ScaledValue")
        return scaled_normalize(self.mantissa / other.mantissa,
                                self.exponent - other.exponent)

    def ratio(self, other: ScaledValue) -> complex:
        """``self / other`` as an ordinary complex number."""
        return (self / other).value()


def _ldexp_sat(x: float, e: int) -> float:
    try:
        return math.ldexp(x, e)
    except OverflowError:
        return math.copysign(math.inf, x)


def _ldexp_c(z: complex, e: int) -> complex:
    return complex(math.ldexp(z.real, e), math.ldexp(z.imag, e))


def scaled_normalize(v, e: int = 0) -> ScaledValue:
    """Represent ``v * 2**e`` with a mantissa of modulus in [1, 2) (or 0)."""
    z = complex(v)
    check_finite(z)
    if z == 0:
        return ScaledValue(0j, 0)
    _, k = math.frexp(abs(z))
    # frexp puts |z| in [0.5, 1) * 2**k; shift one more bit for [1, 2).
    shift = k - 1
    m = _ldexp_c(z, -shift)
    # abs() rounding can leave |m| a hair outside [1, 2)
    if abs(m) >= 2.0:
        m, shift = _ldexp_c(m, -1), shift + 1
    elif abs(m) < 1.0:
        m, shift = _ldexp_c(m, 1), shift - 1
    return ScaledValue(m, e + shift)


__all__ = [
    "BigRational", "EPS", "ScaledValue", "check_finite", "close",
    "is_exact", "rat", "rat_arith", "scaled_normalize", "sqrt", "to_complex",
]
