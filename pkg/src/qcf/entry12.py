r"""Entry 12 of Chapter 16 in the second notebook, and an Euler-method proof.

The identity, valid for ``|q| < 1`` and ``|ab| < 1``::

    (a^2 q^3, b^2 q^3; q^4)_oo      1        (a-bq)(b-aq)         (a-bq^3)(b-aq^3)
    ------------------------  =  ------  +  ---------------  +  -----------------  + ...
     (a^2 q, b^2 q; q^4)_oo       1-ab      (1-ab)(1+q^2)        (1-ab)(1+q^4)

This module builds the fractions C, K (first denominator
doubled) and the J-fraction H(x), the series D(s), and residual functions
for each intermediate identity of the Euler-method proof.  Residuals are
computed from independently evaluated sides, so a small residual is
evidence for the identity rather than a restatement of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cfrac import (CFLimit, CFSpec, convergents_forward, equivalence_transform,
                    eval_backward, limit_detect)
from .errors import ConditioningError, DivergenceError, DomainError, PoleError
from .qseries import PhiSeriesSpec, TailBound, phi_eval, qpoch_infinite
from .scalars import is_exact

# |D(s)| below this makes D-ratios meaningless at double precision
_D_FLOOR = 1e-12


@dataclass(frozen=True)
class Entry12Params:
    """Parameters (a, b, q); the ``requires_*`` flags are validated on creation."""

    a: object
    b: object
    q: object
    requires_q_in_disk: bool = False
    requires_ab_in_disk: bool = False
    requires_a_nonzero: bool = False
    requires_a2q_in_disk: bool = False

    def __post_init__(self):
        self.require(q_in_disk=self.requires_q_in_disk,
                     ab_in_disk=self.requires_ab_in_disk,
                     a_nonzero=self.requires_a_nonzero,
                     a2q_in_disk=self.requires_a2q_in_disk)

    def require(self, q_in_disk=False, ab_in_disk=False, a_nonzero=False,
                a2q_in_disk=False):
        """Raise :class:`DomainError` naming the first violated precondition."""
        a, b, q = self.a, self.b, self.q
        if q_in_disk and not abs(q) < 1:
            raise DomainError("precondition |q|<1 violated")
        if ab_in_disk and not abs(a * b) < 1:
            raise DomainError("precondition |ab|<1 violated")
        if a_nonzero and a == 0:
            raise DomainError("precondition a != 0 violated")
        if a2q_in_disk and not abs(a * a * q) < 1:
            raise DomainError("precondition |a^2 q|<1 violated")
        return self

    @property
    def ab(self):
        return self.a * self.b


@dataclass(frozen=True)
class DsValue:
    s: int
    value: object
    tail: TailBound


def _as_params(p) -> Entry12Params:
    if isinstance(p, Entry12Params):
        return p
    return Entry12Params(*p)


def _partial_numerator(p: Entry12Params, k: int):
    """(a - b q^(2k-1)) (b - a q^(2k-1)), the numerator a_{k+1} of C, K and H."""
    a, b, q = p.a, p.b, p.q
    t = q ** (2 * k - 1)
    return (a - b * t) * (b - a * t)


# ---------------------------------------------------------------------------
# the two sides of Entry 12

def product_side(p, eps: float = 1e-15):
    """(a^2 q^3, b^2 q^3; q^4)_oo / (a^2 q, b^2 q; q^4)_oo."""
    p = _as_params(p).require(q_in_disk=True)
    a, b, q = p.a, p.b, p.q
    q4 = q ** 4
    share = eps / 4
    den = 1
    for x in (a * a * q, b * b * q):
        f, _ = qpoch_infinite(x, q4, share)
        if f == 0 or (not is_exact(f) and abs(f) < 1e-300):
            raise PoleError("product side has a vanishing denominator factor")
        # near-cancelling factor 1 - x q^(4k)
        k, t = 0, x
        while abs(t) > 0.5:
            if abs(1 - t) < 1e-13:
                raise PoleError(f"factor 1 - x q^{4 * k} vanishes", index=k)
            t *= q4
            k += 1
        den *= f
    num = (qpoch_infinite(a * a * q ** 3, q4, share)[0]
           * qpoch_infinite(b * b * q ** 3, q4, share)[0])
    return num / den


def cf_C_spec(p) -> CFSpec:
    """The fraction C = 1/((1-ab) + (a-bq)(b-aq)/((1-ab)(1+q^2) + ...))."""
    p = _as_params(p)
    one_m_ab = 1 - p.ab
    q = p.q

    def terms(k):
        if k == 1:
            return 1, one_m_ab
        j = k - 1
        return _partial_numerator(p, j), one_m_ab * (1 + q ** (2 * j))

    return CFSpec(0, terms)


def cf_K_spec(p) -> CFSpec:
    """K: as C but with first denominator 2(1-ab); K = H(1)/(1-ab)."""
    p = _as_params(p)
    base = cf_C_spec(p)
    one_m_ab = 1 - p.ab

    def terms(k):
        if k == 1:
            return 1, 2 * one_m_ab
        return base.term(k)

    return CFSpec(0, terms)


def jfrac_H_spec(p, x) -> CFSpec:
    """The J-fraction H(x), with partial denominators x(1-ab) + (1-ab)q^(2k)."""
    p = _as_params(p)
    one_m_ab = 1 - p.ab
    q = p.q

    def terms(k):
        j = k - 1
        an = one_m_ab if k == 1 else _partial_numerator(p, j)
        return an, x * one_m_ab + one_m_ab * q ** (2 * j)

    return CFSpec(0, terms)


def C_limit(p, eps=1e-13, max_depth=1000) -> CFLimit:
    return limit_detect(cf_C_spec(p), eps, max_depth)


def K_limit(p, eps=1e-13, max_depth=1000) -> CFLimit:
    return limit_detect(cf_K_spec(p), eps, max_depth)


def H_limit(p, x, eps=1e-13, max_depth=1000) -> CFLimit:
    return limit_detect(jfrac_H_spec(p, x), eps, max_depth)


# ---------------------------------------------------------------------------
# the D(s) series and the Euler-method identities

def D_sum(s: int, p, eps: float = 1e-15) -> DsValue:
    """D(s) = sum_k (b q^(2s-1)/a, -bq/a; q^2)_k / (q^2, -q^(2s); q^2)_k (a^2 q)^k.

    The tail bound is at most ``eps`` relative to the value.
    """
    if s < 0:
        raise DomainError("s must be nonnegative")
    p = _as_params(p)
    if p.a == 0:
        raise DomainError("D(s) needs a != 0 (b/a appears in its parameters)")
    if p.q == 0:
        raise DomainError("D(s) needs q != 0")
    a, b, q = p.a, p.b, p.q
    z = a * a * q
    if not abs(z) < 1:
        raise DivergenceError("D(s) needs |a^2 q| < 1")
    spec = PhiSeriesSpec([b * q ** (2 * s - 1) / a, -b * q / a], [-q ** (2 * s)],
                         q * q, z)
    value, tail = phi_eval(spec, eps)
    mag = float(abs(value))
    if tail.bound > eps * mag and mag > 0:
        value, tail = phi_eval(spec, eps * mag / 2)
    return DsValue(s, value, tail)


def _D(s, p, eps):
    d = D_sum(s, p, eps).value
    if abs(d) < _D_FLOOR:
        raise ConditioningError(f"|D({s})| = {abs(d):.3g} is too small to divide by")
    return d


def star_residual(k: int, p):
    """a^2q(1+b^2q^(2k)/a^2)/(1+q^(2k+2)) - ab - a(aq-b)(1-bq^(2k+1)/a)/(1+q^(2k+2)).

    Identically zero; exact (a Fraction) for rational input.
    """
    p = _as_params(p).require(a_nonzero=True)
    a, b, q = p.a, p.b, p.q
    den = 1 + q ** (2 * k + 2)
    lhs = a * a * q * (1 + b * b * q ** (2 * k) / (a * a)) / den
    rhs = a * b + a * (a * q - b) * (1 - b * q ** (2 * k + 1) / a) / den
    return lhs - rhs


def twostar_residual(k: int, s: int, p):
    """Difference of the two sides of the second splitting identity (zero)."""
    p = _as_params(p).require(a_nonzero=True)
    a, b, q = p.a, p.b, p.q
    den = (1 + q ** (2 * s)) * (1 + q ** (2 * k + 2 * s + 2))
    lhs = (1 + b * q ** (2 * k + 1) / a) * (a * a * q ** (2 * s + 1) + a * b * q ** (2 * s)) / den
    rhs = a * b + a * (a * q ** (2 * s + 1) - b) * (1 - b * q ** (2 * k + 2 * s + 1) / a) / den
    return lhs - rhs


def recursion_residual(s: int, p, eps: float = 1e-14) -> float:
    """Residual of
    (1+q^(2s)) D(s)/D(s+1) = (1-ab)(1+q^(2s))
                             + (a-bq^(2s+1))(b-aq^(2s+1)) / ((1+q^(2s+2)) D(s+1)/D(s+2)).
    """
    p = _as_params(p).require(q_in_disk=True, a_nonzero=True, a2q_in_disk=True)
    q = p.q
    d0, d1, d2 = (_D(s + i, p, eps / 10) for i in range(3))
    lhs = (1 + q ** (2 * s)) * d0 / d1
    rhs = ((1 - p.ab) * (1 + q ** (2 * s))
           + _partial_numerator(p, s + 1) / ((1 + q ** (2 * s + 2)) * d1 / d2))
    return float(abs(lhs - rhs))


def _step1_series(p, eps):
    """The numerator and denominator series of the first proof step."""
    a, b, q = p.a, p.b, p.q
    q2 = q * q
    num, _ = phi_eval(PhiSeriesSpec([b * q / a, -b * q / a], [-q2], q2, a * a * q), eps)
    den, _ = phi_eval(PhiSeriesSpec([b / (a * q), -b / (a * q)], [-q2], q2,
                                    a * a * q ** 3), eps)
    return num, den


def step1_residual(p, eps: float = 1e-14) -> float:
    """|product side - (sum with a^2 q) / (sum with a^2 q^3)|, first proof step."""
    p = _as_params(p).require(q_in_disk=True, a_nonzero=True, a2q_in_disk=True)
    num, den = _step1_series(p, eps / 10)
    if abs(den) < _D_FLOOR:
        raise ConditioningError("denominator series is numerically zero")
    return float(abs(product_side(p, eps / 10) - num / den))


def step2_residual(p, eps: float = 1e-14) -> float:
    """|U/V - (1-ab) - (a-bq)(b-aq)/((1+q^2) D(1)/D(2))|, second proof step."""
    p = _as_params(p).require(q_in_disk=True, a_nonzero=True, a2q_in_disk=True)
    V, U = _step1_series(p, eps / 10)
    if abs(V) < _D_FLOOR:
        raise ConditioningError("V is numerically zero")
    q = p.q
    num = _partial_numerator(p, 1)
    if num == 0:
        tail = 0
    else:
        tail = num / ((1 + q * q) * _D(1, p, eps / 10) / _D(2, p, eps / 10))
    return float(abs(U / V - (1 - p.ab) - tail))


def theorem1_fraction(s: int, p, eps: float = 1e-14) -> CFSpec:
    """Finite fraction of depth s+2 whose last denominator is (1+q^(2s+2)) D(s+1)/D(s+2)."""
    p = _as_params(p)
    base = cf_C_spec(p)
    a_list = [base.term(k)[0] for k in range(1, s + 2)]
    b_list = [base.term(k)[1] for k in range(1, s + 2)]
    q = p.q
    a_list.append(_partial_numerator(p, s + 1))
    b_list.append((1 + q ** (2 * s + 2)) * _D(s + 1, p, eps) / _D(s + 2, p, eps))
    return CFSpec.from_lists(0, a_list, b_list)


def theorem1_residual(s: int, p, eps: float = 1e-14) -> float:
    """|modified approximant of depth s+2 - product side|; zero for every s."""
    if s < 0:
        raise DomainError("s must be nonnegative")
    p = _as_params(p).require(q_in_disk=True, a_nonzero=True, a2q_in_disk=True)
    cf = theorem1_fraction(s, p, eps / 10)
    value = eval_backward(cf, s + 2)
    return float(abs(value - product_side(p, eps / 10)))


def entry12_residual(p, eps: float = 1e-13, max_depth: int = 1000,
                     full_output: bool = False):
    """|limit of C - product side|.

    With ``full_output`` the :class:`CFLimit` is returned as well, which
    reports non-convergence (``converged=False``) instead of raising.
    """
    p = _as_params(p).require(q_in_disk=True, ab_in_disk=True)
    lim = limit_detect(cf_C_spec(p), eps, max_depth)
    res = float(abs(lim.value - product_side(p, eps / 10)))
    if full_output:
        return res, lim
    return res


# ---------------------------------------------------------------------------
# H(1) and the K <-> C relation

def H1_closed(p, eps: float = 1e-15):
    """(1-ab)/2 * 2phi1(-bq/a, bq/a; -q^2; q^2, a^2q) / 2phi1(-bq/a, b/aq; -1; q^2, a^2q)."""
    p = _as_params(p).require(q_in_disk=True, ab_in_disk=True, a_nonzero=True,
                              a2q_in_disk=True)
    a, b, q = p.a, p.b, p.q
    q2, z = q * q, a * a * q
    num, _ = phi_eval(PhiSeriesSpec([-b * q / a, b * q / a], [-q2], q2, z), eps)
    den, _ = phi_eval(PhiSeriesSpec([-b * q / a, b / (a * q)], [-1], q2, z), eps)
    if abs(den) < _D_FLOOR:
        raise PoleError("denominator series of H(1) vanishes")
    return (1 - p.ab) / 2 * num / den


def kc_residual(p, eps: float = 1e-13, max_depth: int = 1000) -> float:
    """|1/K - (1-ab) - 1/C| from the two independently evaluated limits."""
    p = _as_params(p).require(q_in_disk=True, ab_in_disk=True)
    K = K_limit(p, eps, max_depth)
    C = C_limit(p, eps, max_depth)
    if not (K.converged and C.converged):
        return math.inf
    return float(abs(1 / K.value - (1 - p.ab) - 1 / C.value))


# ---------------------------------------------------------------------------
# normalisations for |ab| > 1 and |q| > 1

def invert_params(p) -> Entry12Params:
    """(a, b, q) -> (1/a, 1/b, q)."""
    p = _as_params(p)
    if p.a == 0 or p.b == 0:
        raise DomainError("inversion needs a, b != 0")
    one = Fraction(1) if is_exact(p.a, p.b) else 1
    return Entry12Params(one / p.a, one / p.b, p.q)


def invert_q(p) -> Entry12Params:
    """(a, b, q) -> (a, b, 1/q)."""
    p = _as_params(p)
    if p.q == 0:
        raise DomainError("q inversion needs q != 0")
    one = Fraction(1) if is_exact(p.q) else 1
    return Entry12Params(p.a, p.b, one / p.q)


def cf_C_inverted_ab_spec(p) -> CFSpec:
    """The fraction equivalent to C(a, b, q) written in 1/a, 1/b.

    First term (-1/ab)/(1 - 1/ab), then (1/a - q^(2k-1)/b)(1/b - q^(2k-1)/a)
    over (1 - 1/ab)(1 + q^(2k)).  Its value is C(1/a, 1/b, q) / (-ab).
    """
    p = _as_params(p)
    ip = invert_params(p)
    inv_ab = ip.ab
    base = cf_C_spec(ip)

    def terms(k):
        if k == 1:
            return -inv_ab, 1 - inv_ab
        return base.term(k)

    return CFSpec(0, terms)


def _per_depth_max_diff(cf1: CFSpec, cf2: CFSpec, depth: int, scale2=1) -> float:
    worst = 0.0
    for (k, v1, _), (_, v2, _) in zip(convergents_forward(cf1, depth),
                                      convergents_forward(cf2, depth)):
        worst = max(worst, float(abs(v1 - scale2 * v2)))
    return worst


def invert_params_agreement(p, depth: int = 60) -> float:
    """Largest per-depth gap between C(a, b, q) and its |ab|-inverted forms.

    Compares the original approximants with (i) the displayed inverted
    fraction, (ii) the equivalence transform by c_k = -1/(ab) and (iii)
    ``C(1/a, 1/b, q) / (-ab)``.
    """
    p = _as_params(p)
    orig = cf_C_spec(p)
    c = -1 / p.ab
    return max(
        _per_depth_max_diff(orig, cf_C_inverted_ab_spec(p), depth),
        _per_depth_max_diff(orig, equivalence_transform(orig, lambda k: c), depth),
        _per_depth_max_diff(orig, cf_C_spec(invert_params(p)), depth, scale2=c),
    )


def invert_q_agreement(p, depth: int = 60) -> float:
    """Largest per-depth gap between C(a, b, q) and C(a, b, 1/q).

    Also checks the explicit equivalence transform with c_{k+1} = q^(-2k).
    """
    p = _as_params(p)
    orig = cf_C_spec(p)
    ip = invert_q(p)
    transformed = equivalence_transform(orig, lambda k: ip.q ** (2 * (k - 1)))
    return max(_per_depth_max_diff(orig, cf_C_spec(ip), depth),
               _per_depth_max_diff(transformed, cf_C_spec(ip), depth))


def C_value_by_remarks(p, eps: float = 1e-15):
    """Value of C from the product side, after normalising |ab| and |q| below 1."""
    p = _as_params(p)
    factor = 1
    if abs(p.q) > 1:
        p = invert_q(p)
    if abs(p.ab) > 1:
        factor = -1 / p.ab
        p = invert_params(p)
    return factor * product_side(p, eps)
