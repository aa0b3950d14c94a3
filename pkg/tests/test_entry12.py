import itertools
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from qcf.cfrac import convergents_forward, eval_backward
from qcf.entry12 import (C_limit, C_value_by_remarks, D_sum, Entry12Params, H1_closed,
                         H_limit, K_limit, cf_C_spec, cf_K_spec, entry12_residual,
                         invert_params, invert_params_agreement, invert_q,
                         invert_q_agreement, jfrac_H_spec, kc_residual,
                         product_side, recursion_residual, star_residual,
                         step1_residual, step2_residual, theorem1_residual,
                         twostar_residual)
from qcf.errors import DivergenceError, DomainError

from conftest import RATIONAL_POINTS

# 50-digit values from mpmath (qp / qhyper / backward recurrence)
PRODUCT_STD = 1.0546139858397936432
PRODUCT_A0 = 1.1141163440640690139
PRODUCT_CPLX = complex(1.0354431182948719444, 0.025830696543734981912)
H1_STD = 0.52783212987164430812


def mp_product(a, b, q):
    a, b, q = map(mpmath.mpmathify, (a, b, q))
    q4 = q**4
    return complex(mpmath.qp(a * a * q**3, q4) * mpmath.qp(b * b * q**3, q4)
                   / (mpmath.qp(a * a * q, q4) * mpmath.qp(b * b * q, q4)))


def test_params_flags():
    with pytest.raises(DomainError, match=r"\|ab\|<1"):
        Entry12Params(2, -1.5, 0.5, requires_ab_in_disk=True)
    with pytest.raises(DomainError, match=r"\|q\|<1"):
        Entry12Params(0.1, 0.1, 1.5, requires_q_in_disk=True)
    assert Entry12Params(0.5, -0.5, 0.5).ab == -0.25


def test_product_side_examples(std):
    assert product_side((0, 0, 0.5)) == 1
    assert abs(product_side((0, 0.5, 0.5)) - PRODUCT_A0) < 1e-14
    assert abs(product_side(std) - PRODUCT_STD) < 1e-14
    assert abs(product_side((0.25, -0.2, 0.3 + 0.3j)) - PRODUCT_CPLX) < 1e-14


@given(st.floats(-0.9, 0.9), st.floats(-0.9, 0.9), st.floats(-0.9, 0.9))
@settings(max_examples=40, deadline=None)
def test_product_side_mpmath(a, b, q):
    assert abs(product_side((a, b, q)) - mp_product(a, b, q)) < 1e-12 * abs(mp_product(a, b, q))


def test_cf_specs(std):
    assert cf_C_spec(std).term(2)[0] == pytest.approx(-0.14)
    lim = C_limit((0, 0, 0.5))
    assert lim.value == 1 and lim.depth == 1
    assert K_limit((0, 0, 0.5)).value == F(1, 2)
    assert H_limit((0, 0, 0.5), 1).value == F(1, 2)
    assert abs(K_limit(std).value - H_limit(std, 1).value / (1 - std[0] * std[1])) < 1e-10


def test_jfrac_initial_values():
    p = (F(1, 3), F(-1, 4), F(1, 5))
    x = F(7, 3)
    s = 1 - p[0] * p[1]
    (_, v1, st1), = itertools.islice(convergents_forward(jfrac_H_spec(p, x), 1), 1)
    assert st1.N_k == s and st1.D_k == s * (x + 1)
    assert st1.N_km1 == 0 and st1.D_km1 == 1


def test_D_sum(std):
    a, q = 0.5, 0.5
    d = D_sum(1, (a, 0, q))
    q2 = q * q
    direct = sum((a * a * q) ** k / (mpmath.qp(q2, q2, k) * mpmath.qp(-q2, q2, k))
                 for k in range(60))
    assert abs(d.value - float(direct)) < 1e-14
    # the k=1 term tends to b^2 q^(2s+1)/((1-q^2)(1+q^(2s))), so b must shrink with a
    assert abs(D_sum(2, (1e-6, -1e-6, 0.5)).value - 1) < 1e-11
    with pytest.raises(DomainError):
        D_sum(0, (0, 0.1, 0.5))
    with pytest.raises(DivergenceError):
        D_sum(0, (1.8, 0.1, 0.5))


@pytest.mark.parametrize("p", RATIONAL_POINTS)
def test_star_identities_exact(p):
    for k in range(11):
        assert star_residual(k, p) == 0
        for s in range(11):
            assert twostar_residual(k, s, p) == 0


def test_star_b_zero():
    p = (F(1, 3), F(0), F(1, 5))
    assert star_residual(4, p) == 0 and twostar_residual(2, 3, p) == 0


@given(st.fractions(F(-3), F(3), max_denominator=20).filter(bool),
       st.fractions(F(-3), F(3), max_denominator=20),
       st.fractions(F(-9, 10), F(9, 10), max_denominator=20).filter(bool),
       st.integers(0, 10), st.integers(0, 10))
@settings(max_examples=50)
def test_star_identities_random(a, b, q, k, s):
    p = (a, b, q)
    assert star_residual(k, p) == 0
    assert twostar_residual(k, s, p) == 0


@pytest.mark.parametrize("p", [(0.3, -0.2, 0.5), (0.5, -0.4, 0.7), (0.5, 0, 0.5)])
def test_recursion(p):
    for s in range(11):
        assert recursion_residual(s, p) < 1e-11


def test_steps():
    assert step1_residual((0.3, -0.2, 0.5)) < 1e-10
    assert step1_residual((0.3, 0, 0.5)) < 1e-11
    assert step1_residual((0.5, -0.5, 0.7)) < 1e-9
    assert step2_residual((0.4, -0.1, 0.5)) < 1e-10
    assert step2_residual((0.3, -0.2, 0.3)) < 1e-11
    assert step2_residual((0.4, 0.4 * 0.5, 0.5)) < 1e-11  # b = aq


def test_theorem1_depth_independent(std):
    res = [theorem1_residual(s, std) for s in range(11)]
    assert max(res) < 1e-13


def test_entry12_residual(std):
    assert entry12_residual((0, 0, 0.5)) == 0
    r, lim = entry12_residual(std, full_output=True)
    assert r < 1e-9 and lim.depth <= 200
    assert entry12_residual((0.25, -0.2, 0.3 + 0.3j)) < 1e-8
    with pytest.raises(DomainError, match="precondition"):
        entry12_residual((2, -1.5, 0.5))


def test_C_error_decays_geometrically(std):
    ref = product_side(std)
    errs = [abs(v - ref) for _, v, _ in convergents_forward(cf_C_spec(std), 14)]
    ratios = [errs[k + 1] / errs[k] for k in range(4, 12)]
    assert max(ratios) <= 0.9


def test_H1(std):
    h = H1_closed(std)
    assert abs(h - H1_STD) < 1e-14
    assert abs(h - H_limit(std, 1).value) < 1e-9
    # K = D(1) / (2 D(0))
    assert abs(K_limit(std).value - D_sum(1, std).value / (2 * D_sum(0, std).value)) < 1e-12
    assert abs(H1_closed((1e-5, -1e-5, 0.5)) - 0.5) < 1e-9


def test_kc(std):
    assert kc_residual(std) < 1e-9


def test_inversions():
    p = Entry12Params(2, -1.5, 0.5)
    ip = invert_params(p)
    assert (ip.a, ip.b) == (0.5, -1 / 1.5)
    assert invert_params(ip) == Entry12Params(2, -1.5, 0.5) or \
        abs(invert_params(ip).b + 1.5) < 1e-15
    assert abs(ip.a * ip.b) < 1
    ex = Entry12Params(F(2), F(-3, 2), F(1, 2))
    assert invert_params(invert_params(ex)) == ex
    assert invert_q(invert_q(ex)) == ex
    assert invert_params_agreement((2, -1.5, 0.5), 60) < 1e-9
    with pytest.raises((DomainError, ZeroDivisionError, ValueError)):
        invert_params((0, 1, 0.5))
    with pytest.raises((DomainError, ZeroDivisionError, ValueError)):
        invert_q((0.3, 0.2, 0))


def test_invert_q():
    p = (0.3, -0.2, 2)
    assert invert_q_agreement(p, 40) < 1e-10
    cf = cf_C_spec(p)
    assert abs(eval_backward(cf, 200) - C_value_by_remarks(p)) < 1e-9
    assert entry12_residual(invert_q(p)) < 1e-9
