import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qcf.errors import DomainError
from qcf.scalars import (ScaledValue, close, is_exact, rat, rat_arith,
                         scaled_normalize, sqrt)

rationals = st.fractions(max_denominator=10**6)
finite = st.floats(min_value=-1e300, max_value=1e300, allow_nan=False,
                   allow_infinity=False)


def test_rat_arith_examples():
    assert rat_arith("add", F(1, 3), F(1, 6)) == F(1, 2)
    z = rat_arith("mul", F(0), F(7, 5))
    assert z == 0 and z.denominator == 1
    assert rat_arith("div", F(2, 3), F(4, 9)) == F(3, 2)


def test_rat_arith_div_zero():
    with pytest.raises(DomainError):
        rat_arith("div", F(1), F(0))


def test_rat_arith_unknown_op():
    with pytest.raises(ValueError):
        rat_arith("pow", F(1), F(2))


def test_rat_canonical():
    r = rat(6, -4)
    assert (r.numerator, r.denominator) == (-3, 2)


@given(rationals, rationals, rationals)
def test_field_laws(x, y, z):
    add = lambda u, v: rat_arith("add", u, v)
    mul = lambda u, v: rat_arith("mul", u, v)
    assert add(add(x, y), z) == add(x, add(y, z))
    assert mul(x, y) == mul(y, x)
    assert mul(x, add(y, z)) == add(mul(x, y), mul(x, z))


def test_scaled_normalize_examples():
    assert scaled_normalize(8 + 0j, 0) == ScaledValue(1 + 0j, 3)
    assert scaled_normalize(0, 5) == ScaledValue(0j, 0)
    assert scaled_normalize(0.75j, 2) == ScaledValue(1.5j, 1)


@given(finite, finite, st.integers(-200, 200))
def test_scaled_roundtrip(re, im, e):
    v = complex(re, im)
    s = scaled_normalize(v, e)
    if v != 0:
        assert 1 <= abs(s.mantissa) < 2
    target = v * 2.0 ** e
    if not (math.isfinite(target.real) and math.isfinite(target.imag)):
        return
    assert abs(s.value() - target) <= 2 * math.ulp(abs(target) or 1.0)


@given(st.floats(1e-200, 1e200), st.floats(1e-200, 1e200),
       st.integers(-3000, 3000), st.integers(-3000, 3000))
def test_scaled_ratio(x, y, ex, ey):
    sx, sy = scaled_normalize(x, ex), scaled_normalize(y, ey)
    want = (x / y) * 2.0 ** (ex - ey) if abs(ex - ey) < 900 else None
    got = sx.ratio(sy)
    if want is not None and math.isfinite(want) and want != 0:
        assert abs(got - want) <= 4 * 2**-52 * abs(want)


def test_sqrt_exact_and_float():
    assert sqrt(F(9, 4)) == F(3, 2)
    assert isinstance(sqrt(F(2)), float)
    assert sqrt(-4.0) == 2j


def test_helpers():
    assert is_exact(1, F(1, 2)) and not is_exact(1, 0.5)
    assert close(1.0, 1.0 + 1e-15)
