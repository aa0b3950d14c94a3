"""q-Pochhammer symbols, basic hypergeometric series and truncated power series.

Every infinite object is evaluated by truncation together with a rigorous
bound on what was left out (:class:`TailBound`).  Inputs may be Fractions
(exact partial sums) or floats/complex numbers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DivergenceError, DomainError, PoleError
from .scalars import is_exact

# lower parameters closer than this to q^(-k) are treated as poles
POLE_TOL = 1e-13

MAX_TERMS = 200_000


@dataclass(frozen=True)
class TailBound:
    """Truncation index ``K`` and an upper bound on the omitted part."""

    K: int
    bound: float

    def __post_init__(self):
        if not self.bound >= 0:
            raise ValueError("tail bound must be nonnegative")


def qpoch_finite(a, q, n: int):
    """(a; q)_n = (1 - a)(1 - aq)...(1 - aq^(n-1)); 1 for n = 0."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    p = 1
    qk = 1
    for _ in range(n):
        p *= 1 - a * qk
        qk *= q
    return p


def _log_tail(abs_a: float, abs_q: float, K: int) -> float:
    """Bound on sum_{k>K} -log|1 - a q^k|, valid when |a||q|^(K+1) < 1."""
    u = abs_a * abs_q ** (K + 1)
    return u / ((1.0 - abs_q) * (1.0 - u))


def qpoch_infinite(a, q, eps: float = 1e-15):
    """(a; q)_oo for |q| < 1, truncated at a relative error at most ``eps``.

    Returns ``(value, TailBound)``.  The bound is an absolute bound on the
    difference between the truncated and the infinite product; it follows
    from ``|log prod_{k>K}(1 - a q^k)| <= sum_{k>K} |a||q|^k / (1 - |a||q|^k)``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    abs_q = float(abs(q))
    if abs_q >= 1:
        raise DomainError(f"(a;q)_oo needs |q| < 1, got |q| = {abs_q}")
    abs_a = float(abs(a))
    if abs_a == 0 or abs_q == 0:
        return 1 - a, TailBound(0, 0.0)

    p = 1
    qk = 1
    k = 0
    while True:
        p *= 1 - a * qk
        qk *= q
        if abs_a * abs_q ** (k + 1) < 0.5:
            rel = math.expm1(_log_tail(abs_a, abs_q, k))
            if rel <= eps or rel == 0.0:
                return p, TailBound(k, float(abs(p)) * rel)
        k += 1
        if k > MAX_TERMS:
            raise DivergenceError("q-Pochhammer product did not reach tolerance")


def qpoch_multi(args: Sequence, q, n=math.inf, eps: float = 1e-15):
    """(a_1, ..., a_r; q)_n as a product of single symbols.

    ``n`` may be ``math.inf``; each infinite factor then gets ``eps / r`` of
    the relative error budget.
    """
    p = 1
    if n == math.inf:
        share = eps / max(len(args), 1)
        for a in args:
            p *= qpoch_infinite(a, q, share)[0]
    else:
        for a in args:
            p *= qpoch_finite(a, q, int(n))
    return p


@dataclass(frozen=True)
class PhiSeriesSpec:
    r"""Parameters of :math:`{}_r\phi_s(a_1..a_r; b_1..b_s; q, z)`."""

    upper: tuple
    lower: tuple
    q: object
    z: object

    def __init__(self, upper, lower, q, z):
        object.__setattr__(self, "upper", tuple(upper))
        object.__setattr__(self, "lower", tuple(lower))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "z", z)


def _termination_index(a, q):
    """Smallest n >= 0 with 1 - a q^n == 0, or None."""
    if a == 0 or q == 0:
        return None
    abs_a, abs_q = float(abs(a)), float(abs(q))
    if abs_a < 1 or abs_q == 1:
        return 0 if a == 1 else None
    n = round(math.log(abs_a) / -math.log(abs_q))
    for m in (n - 1, n, n + 1):
        if m < 0:
            continue
        f = 1 - a * q ** m
        if f == 0 or (not is_exact(f) and abs(f) <= 1e-14):
            return m
    return None


def phi_eval(spec: PhiSeriesSpec, eps: float = 1e-15, max_terms: int = MAX_TERMS):
    r"""Sum a basic hypergeometric series with a certified truncation.

    .. math::

        {}_r\phi_s = \sum_k \frac{(a_1,\dots,a_r;q)_k}{(q,b_1,\dots,b_s;q)_k}
                     \big((-1)^k q^{\binom k2}\big)^{1+s-r} z^k

    Summation stops at the first ``K`` for which the geometric majorant of
    the remaining terms is at most ``eps``.  Returns ``(value, TailBound)``.
    In exact mode the partial sum is an exact Fraction and only the tail
    bound is a float.
    """
    upper, lower, q, z = spec.upper, spec.lower, spec.q, spec.z
    r, s = len(upper), len(lower)
    if eps <= 0:
        raise ValueError("eps must be positive")
    abs_q = float(abs(q))
    if abs_q >= 1:
        raise DomainError(f"basic hypergeometric series needs |q| < 1, got {abs_q}")
    if z == 0:
        return (Fraction(1) if is_exact(z) else 1.0), TailBound(0, 0.0)

    stops = [n for n in (_termination_index(a, q) for a in upper) if n is not None]
    stop = min(stops) if stops else None
    abs_z = float(abs(z))
    if stop is None and (r > s + 1 or (r == s + 1 and abs_z >= 1)):
        raise DivergenceError(
            f"{r}phi{s} series diverges: |z| = {abs_z} (needs |z| < 1)")

    abs_up = [float(abs(a)) for a in upper]
    abs_lo = [float(abs(b)) for b in lower]
    expo = 1 + s - r
    exact = is_exact(q, z, *upper, *lower)
    total = 0
    term = Fraction(1) if exact else 1.0
    qk = 1
    for k in range(max_terms):
        total += term
        if stop is not None and k >= stop:
            return total, TailBound(k, 0.0)
        num = 1
        for a in upper:
            num *= 1 - a * qk
        den = 1 - q * qk
        for b in lower:
            f = 1 - b * qk
            if f == 0 or (not exact and abs(f) < POLE_TOL):
                raise PoleError(
                    f"lower parameter {b!r} hits q^-{k}: denominator factor vanishes",
                    index=k)
            den *= f
        term = term * num / den * z
        if expo:
            term *= (-qk) ** expo
        qk *= q
        # majorant of |t_{m+1}/t_m| for m >= k+1; nonincreasing in m
        aq = abs_q ** (k + 1)
        if all(b * aq < 1 for b in abs_lo):
            R = abs_z * aq ** max(expo, 0)
            for a in abs_up:
                R *= 1 + a * aq
            R /= 1 - abs_q * aq
            for b in abs_lo:
                R /= 1 - b * aq
            if R < 1:
                bound = float(abs(term)) / (1 - R)
                if bound <= eps:
                    return total, TailBound(k, bound)
    raise DivergenceError(f"series not within {eps} after {max_terms} terms")


def qbinomial_residual(a, z, q, eps: float = 1e-15) -> float:
    """|1phi0(a; -; q, z) - (az; q)_oo / (z; q)_oo|, each side computed separately."""
    if abs(z) >= 1 or abs(q) >= 1:
        raise DomainError("q-binomial theorem needs |z| < 1 and |q| < 1")
    lhs, _ = phi_eval(PhiSeriesSpec([a], [], q, z), eps / 4)
    num, _ = qpoch_infinite(a * z, q, eps / 4)
    den, _ = qpoch_infinite(z, q, eps / 4)
    return float(abs(lhs - num / den))


def heine_residual(a, b, c, z, q, eps: float = 1e-15) -> float:
    """Residual of Heine's first transformation.

    ``2phi1(a, b; c; q, z) = (b, az; q)_oo / (c, z; q)_oo * 2phi1(c/b, z; az; q, b)``
    """
    if abs(z) >= 1 or abs(b) >= 1 or abs(q) >= 1:
        raise DomainError("Heine transformation needs |z|, |b|, |q| < 1")
    if b == 0:
        raise DomainError("Heine transformation with b = 0 is a limiting case")
    lhs, _ = phi_eval(PhiSeriesSpec([a, b], [c], q, z), eps / 10)
    pref = (qpoch_multi([b, a * z], q, math.inf, eps / 10)
            / qpoch_multi([c, z], q, math.inf, eps / 10))
    rhs, _ = phi_eval(PhiSeriesSpec([c / b, z], [a * z], q, b),
                      eps / (10 * max(1.0, float(abs(pref)))))
    return float(abs(lhs - pref * rhs))


# ---------------------------------------------------------------------------
# truncated power series

@dataclass(frozen=True)
class TruncatedSeries:
    """c_0 + c_1 t + ... + c_order t^order  (mod t^(order+1))."""

    coeffs: tuple
    order: int
    var: str = field(default="t", compare=False)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")
        cs = tuple(self.coeffs)[: self.order + 1]
        cs = cs + (0,) * (self.order + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def constant(cls, c, order, var="t"):
        return cls((c,), order, var)

    @classmethod
    def linear(cls, c0, c1, order, var="t"):
        """c0 + c1 t."""
        return cls((c0, c1), order, var)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __len__(self):
        return self.order + 1

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        return TruncatedSeries.constant(other, self.order, self.var)

    def __add__(self, other):
        g = self._coerce(other)
        n = min(self.order, g.order)
        return TruncatedSeries(
            tuple(self.coeffs[i] + g.coeffs[i] for i in range(n + 1)), n, self.var)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(tuple(-c for c in self.coeffs), self.order, self.var)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(tuple(c * other for c in self.coeffs),
                                   self.order, self.var)
        n = min(self.order, other.order)
        f, g = self.coeffs, other.coeffs
        out = []
        for i in range(n + 1):
            acc = 0
            for j in range(i + 1):
                acc += f[j] * g[i - j]
            out.append(acc)
        return TruncatedSeries(tuple(out), n, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(tuple(c / other for c in self.coeffs),
                                   self.order, self.var)
        g = other.coeffs
        if g[0] == 0:
            raise PoleError("division by a series with zero constant term")
        n = min(self.order, other.order)
        f = self.coeffs
        h = []
        for i in range(n + 1):
            acc = f[i]
            for j in range(1, i + 1):
                acc -= g[j] * h[i - j]
            h.append(acc / g[0])
        return TruncatedSeries(tuple(h), n, self.var)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def scale_var(self, lam):
        """Substitute t -> lam * t."""
        out, p = [], 1
        for c in self.coeffs:
            out.append(c * p)
            p *= lam
        return TruncatedSeries(tuple(out), self.order, self.var)

    def max_abs_diff(self, values: Sequence) -> float:
        """max_n |c_n - values[n]| over the common range."""
        n = min(len(values), self.order + 1)
        return max(float(abs(self.coeffs[i] - values[i])) for i in range(n))


def ts_arith(op: str, f: TruncatedSeries, g) -> TruncatedSeries:
    """Dispatch ``op`` in {add, sub, mul, div, scale_var} on truncated series."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    if op == "scale_var":
        return f.scale_var(g)
    raise ValueError(f"unknown series operation {op!r}")
