r"""Polynomial sequences attached to the J-fraction H(x) and their asymptotics.

* ``N_k, D_k``: numerators and denominators of H(x),
  ``y_{k+1} = ((1-ab)x + (1-ab)q^{2k}) y_k + (a-bq^{2k-1})(b-aq^{2k-1}) y_{k-1}``.
* ``P_k(x) = D_k(eta x) / (eta^k (1-ab)^k)`` satisfies the monic recurrence
  ``x P_k = P_{k+1} + c q^{2k} P_k + beta_k P_{k-1}`` with
  ``beta_k = (1 - bq^{2k-1}/a)(1 - aq^{2k-1}/b) / 4``; ``P*_k`` are the
  associated polynomials and ``X(x) = lim P*_k / P_k``.
* ``Q_k = P_k / (bq/a; q^2)_k`` has the generating function checked by
  :func:`genfun_Q_check`; Darboux's method gives
  ``X(x) = 2 rho F(rho) / G(rho)`` (:func:`X_closed`).
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (DegenerateError, DivergenceError, DomainError,
                     MassPointWarning, PoleError)
from .entry12 import Entry12Params, H1_closed, _as_params
from .qseries import PhiSeriesSpec, TruncatedSeries, phi_eval, qpoch_finite
from .scalars import is_exact, sqrt

# |G| below this is reported as a (possible) mass point
G_FLOOR = 1e-12

_BIG_EXP = 512


def _quarter(*vals):
    return Fraction(1, 4) if is_exact(*vals) else 0.25


# ---------------------------------------------------------------------------
# N_k and D_k

def _poly_axpb(p, alpha, beta):
    """Coefficients of (alpha x + beta) * p(x), low degree first."""
    out = [0] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i] += beta * c
        out[i + 1] += alpha * c
    return out


def _poly_add(p, r):
    n = max(len(p), len(r))
    p = list(p) + [0] * (n - len(p))
    r = list(r) + [0] * (n - len(r))
    return [u + v for u, v in zip(p, r)]


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def ND_polys(p, x=None, kmax: int = 10, mode: str = "values"):
    """Numerator and denominator sequences ``N_0..N_kmax``, ``D_0..D_kmax``.

    ``mode="values"`` evaluates at ``x``; ``mode="coefficients"`` returns
    coefficient lists in x (constant term first, trailing zeros trimmed).
    The recurrence is used with the ``1/a``, ``1/b`` cleared, i.e. with
    ``ab(1-bq^{2k-1}/a)(1-aq^{2k-1}/b)`` written as
    ``(a-bq^{2k-1})(b-aq^{2k-1})``, so it is valid at a = 0 or b = 0 too.
    """
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    s = 1 - a * b

    def coeff(k):
        t = q ** (2 * k - 1)
        return (a - b * t) * (b - a * t)

    if mode == "values":
        if x is None:
            raise ValueError("x is required in values mode")
        N = [0, s]
        D = [1, s * (x + 1)]
        for k in range(1, kmax):
            lin = s * x + s * q ** (2 * k)
            w = coeff(k)
            N.append(lin * N[k] + w * N[k - 1])
            D.append(lin * D[k] + w * D[k - 1])
        return N, D
    if mode == "coefficients":
        N = [[0], [s]]
        D = [[1], [s, s]]
        for k in range(1, kmax):
            beta = s * q ** (2 * k)
            w = coeff(k)
            N.append(_trim(_poly_add(_poly_axpb(N[k], s, beta), [w * c for c in N[k - 1]])))
            D.append(_trim(_poly_add(_poly_axpb(D[k], s, beta), [w * c for c in D[k - 1]])))
        return N, D
    raise ValueError(f"unknown mode {mode!r}")


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


# ---------------------------------------------------------------------------
# scaling to the monic form

@dataclass(frozen=True)
class ScalingConstants:
    """eta with eta^2 = -4ab/(1-ab)^2 and c = -(1-ab)/(2 sqrt(-ab)) = -1/eta."""

    eta: object
    c: object


def scaling_constants(p, real: bool = True) -> ScalingConstants:
    """Constants that turn the D_k recurrence into the monic P_k recurrence.

    ``real=True`` insists on real a, b of opposite sign so that c is real.
    """
    p = _as_params(p)
    ab = p.ab
    if ab == 0:
        raise DegenerateError("scaling needs ab != 0 (c has a pole at ab = 0)")
    if real:
        if isinstance(ab, complex) and ab.imag != 0:
            raise DomainError("real scaling needs real a and b")
        if ab.real > 0 if isinstance(ab, complex) else ab > 0:
            raise DomainError("c is real only when a and b have opposite signs")
    root = sqrt(-ab)
    eta = 2 * root / (1 - ab)
    c = -(1 - ab) / (2 * root)
    return ScalingConstants(eta, c)


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """alpha_k = c q^(2k), beta_k = (1 - bq^(2k-1)/a)(1 - aq^(2k-1)/b) / 4."""

    a: object
    b: object
    q: object
    c: object

    @classmethod
    def from_params(cls, p):
        p = _as_params(p)
        return cls(p.a, p.b, p.q, scaling_constants(p).c)

    def alpha(self, k):
        return self.c * self.q ** (2 * k)

    def beta(self, k):
        a, b, q = self.a, self.b, self.q
        t = q ** (2 * k - 1)
        return _quarter(a, b, q) * (1 - b * t / a) * (1 - a * t / b)


def _monic_run(rc: RecurrenceCoeffs, x, kmax, y0, y1):
    ys = [y0, y1]
    for k in range(1, kmax):
        ys.append((x - rc.alpha(k)) * ys[k] - rc.beta(k) * ys[k - 1])
    return ys[: kmax + 1]


def P_polys(p, x, kmax: int):
    """P_0..P_kmax at x, with P_0 = 1 and P_1 = x - c."""
    rc = RecurrenceCoeffs.from_params(p)
    return _monic_run(rc, x, kmax, 1, x - rc.c)


def Pstar_polys(p, x, kmax: int):
    """Associated polynomials P*_0 = 0, P*_1 = 1 (same recurrence)."""
    rc = RecurrenceCoeffs.from_params(p)
    return _monic_run(rc, x, kmax, 0, 1)


def Q_polys(p, x, kmax: int, star: bool = False):
    """Q_k = P_k / (bq/a; q^2)_k from its own recurrence.

    ``(1 - bq^(2k+1)/a) Q_{k+1} = (x - c q^(2k)) Q_k - (1 - aq^(2k-1)/b) Q_{k-1} / 4``
    with Q_0 = 1, Q_1 = (x - c)/(1 - bq/a) (or Q*_0 = 0, Q*_1 = 1/(1 - bq/a)).
    """
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    c = scaling_constants(p).c
    quarter = _quarter(a, b, q)

    def lead(k):
        f = 1 - b * q ** (2 * k + 1) / a
        if f == 0:
            raise PoleError(f"leading factor 1 - bq^{2 * k + 1}/a vanishes", index=k)
        return f

    ys = [0, 1 / lead(0)] if star else [1, (x - c) / lead(0)]
    if is_exact(*ys, x):
        ys = [Fraction(y) for y in ys]
    for k in range(1, kmax):
        nxt = (x - c * q ** (2 * k)) * ys[k] - quarter * (1 - a * q ** (2 * k - 1) / b) * ys[k - 1]
        ys.append(nxt / lead(k))
    return ys[: kmax + 1]


def Qstar_polys(p, x, kmax: int):
    return Q_polys(p, x, kmax, star=True)


# ---------------------------------------------------------------------------
# branch of sqrt(x^2 - 1)

@dataclass(frozen=True)
class BranchData:
    """x, sqrt(x^2-1) on the branch ~ x at infinity, rho_1,2 = x -/+ sqrt.

    ``rho_star`` is the root of modulus <= 1.  ``table_label`` records which
    of rho1/rho2 the half-plane rule (rho1 for Im x > 0 or x > 1, rho2 for
    Im x < 0 or x < -1) would pick; ``selected_label`` is the one chosen by
    modulus.
    """

    x: object
    sqrt_x2m1: object
    rho1: object
    rho2: object
    rho_star: object
    selected_label: str = field(default="rho1")
    table_label: str = field(default="rho1")


def sqrt_x2m1(x):
    """sqrt(x^2 - 1) with the cut on [-1, 1] and sqrt(x^2-1) ~ x as x -> oo."""
    if x == 1 or x == -1:
        return 0
    if _is_real(x):
        xr = x.real if isinstance(x, complex) else x
        if xr * xr > 1:
            root = sqrt(xr * xr - 1)
            return root if xr > 0 else -root
    return cmath.sqrt(x - 1) * cmath.sqrt(x + 1)


def _is_real(x):
    return not isinstance(x, complex) or x.imag == 0


def branch(x) -> BranchData:
    if _is_real(x):
        xr = x.real if isinstance(x, complex) else x
        if -1 < xr < 1:
            raise DomainError(f"x = {x} lies in (-1, 1), the spectrum interval")
        if xr == 1 or xr == -1:
            lab = "+1" if xr == 1 else "-1"
            return BranchData(x, 0, x, x, x, lab, lab)
        table = "rho1" if xr > 1 else "rho2"
    else:
        table = "rho1" if x.imag > 0 else "rho2"
    s = sqrt_x2m1(x)
    rho1, rho2 = x - s, x + s
    # the small root suffers cancellation; take it as 1/(large root)
    if abs(rho1) <= abs(rho2):
        rho1 = 1 / rho2
        star, label = rho1, "rho1"
    else:
        rho2 = 1 / rho1
        star, label = rho2, "rho2"
    return BranchData(x, s, rho1, rho2, star, label, table)


# ---------------------------------------------------------------------------
# gamma_1,2, F and G, X(x)

@dataclass(frozen=True)
class GammaPair:
    """(1 - gamma1 t)(1 - gamma2 t) = 1 - (acq/b) t + (a^2 q^2 / 4b^2) t^2."""

    gamma1: object
    gamma2: object


def gammas(p) -> GammaPair:
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    if b == 0:
        raise DomainError("gamma_1,2 need b != 0")
    c = scaling_constants(p).c
    root = sqrt(c * c - 1)
    lead = a * q / (2 * b)
    return GammaPair(lead * (c + root), lead * (c - root))


def _check_rho(rho):
    if abs(rho) > 1 + 1e-15:
        raise DomainError(f"|rho| = {abs(rho)} > 1")


def F_series(rho, p, eps: float = 1e-15):
    """F(rho) = 2phi1(2 gamma1 rho, 2 gamma2 rho; q^2 rho^2; q^2, bq/a)."""
    p = _as_params(p)
    _check_rho(rho)
    a, b, q = p.a, p.b, p.q
    g = gammas(p)
    z = b * q / a
    if not abs(z) < 1:
        raise DivergenceError("F needs |bq/a| < 1")
    q2 = q * q
    val, _ = phi_eval(PhiSeriesSpec([2 * g.gamma1 * rho, 2 * g.gamma2 * rho],
                                    [q2 * rho * rho], q2, z), eps)
    return val


def G_series(rho, p, eps: float = 1e-15):
    """G(rho) = (1 - b/aq) 2phi1(2 gamma1 rho, 2 gamma2 rho; q^2 rho^2; q^2, b/aq)."""
    p = _as_params(p)
    _check_rho(rho)
    a, b, q = p.a, p.b, p.q
    g = gammas(p)
    z = b / (a * q)
    if not abs(z) < 1:
        raise DivergenceError("G needs |b/(aq)| < 1")
    q2 = q * q
    val, _ = phi_eval(PhiSeriesSpec([2 * g.gamma1 * rho, 2 * g.gamma2 * rho],
                                    [q2 * rho * rho], q2, z), eps)
    val = (1 - z) * val
    if abs(val) < G_FLOOR:
        warnings.warn(f"|G(rho)| = {abs(val):.3g}: possible mass point", MassPointWarning,
                      stacklevel=2)
    return val


def X_closed(p, x, eps: float = 1e-15):
    """X(x) = 2 rho F(rho) / G(rho) with rho = rho_star(x)."""
    rho = branch(x).rho_star
    F = F_series(rho, p, eps)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", MassPointWarning)
        G = G_series(rho, p, eps)
    if abs(G) < G_FLOOR:
        raise PoleError(f"G(rho) ~ 0 at x = {x}: X has a pole (mass point)")
    return 2 * rho * F / G


def _rescale(vals):
    m = max(abs(v) for v in vals)
    if m == 0 or not math.isfinite(m):
        return vals
    e = math.frexp(m)[1]
    if -_BIG_EXP <= e <= _BIG_EXP:
        return vals
    f = math.ldexp(1.0, -e)
    return [v * f for v in vals]


def X_limit(p, x, kmax: int = 300, full_output: bool = False):
    """P*_kmax(x) / P_kmax(x) from the jointly rescaled recurrences.

    With ``full_output`` returns ``(value, delta, depth)`` where ``delta`` is
    the change since the ``kmax // 2`` checkpoint.  A vanishing ``P_kmax``
    moves the evaluation one step further.
    """
    rc = RecurrenceCoeffs.from_params(p)
    exact = is_exact(x, rc.a, rc.b, rc.q, rc.c)
    P0, P1, S0, S1 = 1, x - rc.c, 0, 1
    half = max(kmax // 2, 1)
    checkpoint = S1 / P1 if P1 != 0 else None
    k = 1
    while True:
        if k >= kmax and P1 != 0 and (exact or abs(P1) > 1e-300 * max(abs(P0), 1e-300)):
            break
        beta = rc.beta(k)
        lin = x - rc.alpha(k)
        P0, P1 = P1, lin * P1 - beta * P0
        S0, S1 = S1, lin * S1 - beta * S0
        if not exact:
            P0, P1, S0, S1 = _rescale([P0, P1, S0, S1])
        k += 1
        if k == half and P1 != 0:
            checkpoint = S1 / P1
        if k > kmax + 10:
            raise DegenerateError("P_k vanishes repeatedly near kmax")
    value = Fraction(S1) / P1 if exact else S1 / P1
    if full_output:
        delta = float(abs(value - checkpoint)) if checkpoint is not None else math.inf
        return value, delta, k
    return value


# ---------------------------------------------------------------------------
# generating functions

def _rho_pair(x):
    s = sqrt_x2m1(x)
    return x - s, x + s


def _q_product_sum(u, v, q2, z, order, tol=1e-18, max_m=10_000):
    """Truncated sum_m z^m prod_{j<m} prod_i (1 - u_i q2^j t) / prod_i (1 - v_i q2^(j+1) t).

    Summation stops when a coefficientwise majorant of the remaining terms
    drops below ``tol`` relative to the partial sum.  Returns the series and
    that majorant bound.
    """
    abs_z, abs_q2 = float(abs(z)), float(abs(q2))
    if abs_z >= 1:
        raise DivergenceError(f"generating-function sum needs |z| < 1, got {abs_z}")
    one = TruncatedSeries.constant(1, order)
    term = one
    maj = TruncatedSeries.constant(1.0, order)
    total = one
    zm = 1.0
    for m in range(1, max_m):
        qj, qj1 = q2 ** (m - 1), q2 ** m
        for ui in u:
            term = term * TruncatedSeries.linear(1, -ui * qj, order)
            maj = maj * TruncatedSeries.linear(1.0, float(abs(ui)) * abs_q2 ** (m - 1), order)
        for vi in v:
            term = term / TruncatedSeries.linear(1, -vi * qj1, order)
            w = float(abs(vi)) * abs_q2 ** m
            if w < 1:
                maj = maj / TruncatedSeries.linear(1.0, -w, order)
        term = term * z
        total = total + term
        zm *= abs_z
        bound = 2 * max(maj.coeffs) * zm * abs_z / (1 - abs_z)
        scale = max(1.0, max(float(abs(c)) for c in total.coeffs))
        if bound <= tol * scale and all(float(abs(vi)) * abs_q2 ** m < 0.5 for vi in v):
            return total, bound
    raise DivergenceError("generating-function sum did not converge")


def Q_genfun(p, x, order: int, star: bool = False) -> TruncatedSeries:
    """Closed-form generating function of Q_k (or Q*_k) expanded to ``order``."""
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    g = gammas(p)
    rho1, rho2 = _rho_pair(x)
    z = b * q / a if star else b / (a * q)
    body, _ = _q_product_sum([g.gamma1, g.gamma2], [rho1 / 2, rho2 / 2], q * q, z, order)
    pre_den = (TruncatedSeries.linear(1, -rho1 / 2, order)
               * TruncatedSeries.linear(1, -rho2 / 2, order))
    pre_num = (TruncatedSeries.linear(0, 1, order) if star
               else TruncatedSeries.constant(1 - b / (a * q), order))
    return pre_num / pre_den * body


def genfun_Q_check(p, x, order: int = 12, star: bool = False) -> float:
    """Max coefficient gap between the closed-form Q(t) (or Q*(t)) and the recurrence."""
    series = Q_genfun(p, x, order, star)
    ref = Q_polys(p, x, order, star=star)
    return series.max_abs_diff(ref)


def deltas(p, x):
    """delta_1, delta_2 with 1 - (1-ab)xt - abt^2 = (1 - delta_1 t)(1 - delta_2 t)."""
    p = _as_params(p)
    s = 1 - p.ab
    disc = (s * x) ** 2 + 4 * p.ab
    if disc == 0:
        raise DegenerateError("delta_1 = delta_2 (zero discriminant)")
    root = sqrt(disc)
    return (s * x + root) / 2, (s * x - root) / 2


def hatND_values(p, x, kmax: int):
    """N_k/(bq/a; q^2)_k and D_k/(bq/a; q^2)_k for k = 0..kmax."""
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    N, D = ND_polys(p, x, kmax)
    z = b * q / a
    out_n, out_d = [], []
    poch = 1
    for k in range(kmax + 1):
        if k:
            poch *= 1 - z * q ** (2 * (k - 1))
        if poch == 0:
            raise PoleError(f"(bq/a; q^2)_{k} vanishes", index=k)
        out_n.append(N[k] / poch)
        out_d.append(D[k] / poch)
    return out_n, out_d


def hatND_genfun(p, x, order: int, parts=("N", "D")):
    """Closed forms of N^(t) and D^(t) expanded to ``order`` (``None`` for a skipped part)."""
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    d1, d2 = deltas(p, x)
    u = [-a * q / b, a * a * q]
    v = [d1, d2]
    pre_den = (TruncatedSeries.linear(1, -d1, order)
               * TruncatedSeries.linear(1, -d2, order))
    N_hat = D_hat = None
    if "N" in parts:
        n_body, _ = _q_product_sum(u, v, q * q, b * q / a, order)
        N_hat = TruncatedSeries.linear(0, 1 - p.ab, order) / pre_den * n_body
    if "D" in parts:
        d_body, _ = _q_product_sum(u, v, q * q, b / (a * q), order)
        D_hat = TruncatedSeries.constant(1 - b / (a * q), order) / pre_den * d_body
    return N_hat, D_hat


def hatND_genfun_check(p, x, order: int = 10, parts=("N", "D")) -> float:
    """Max coefficient gap between N^(t), D^(t) closed forms and the recurrences.

    ``parts=("N",)`` checks N^ alone, which only needs |bq/a| < 1.
    """
    N_hat, D_hat = hatND_genfun(p, x, order, parts)
    n_ref, d_ref = hatND_values(p, x, order)
    gaps = [s.max_abs_diff(r) for s, r in ((N_hat, n_ref), (D_hat, d_ref)) if s is not None]
    if not gaps:
        raise ValueError("parts must include 'N' or 'D'")
    return max(gaps)


# ---------------------------------------------------------------------------
# Darboux asymptotics

@dataclass(frozen=True)
class DarbouxDiagnostics:
    x: object
    k: int
    rho_star: object
    r_k: object
    r_star_k: object
    target: object
    target_star: object
    rel_dev: float
    rel_dev_star: float
    X_ratio: object
    X_closed: object
    X_dev: float


def _scaled_Q_run(p, x, rho, kmax, star):
    """w_k = Q_k (2 rho)^k by a recurrence that never overflows for |2 rho Q| ~ 1."""
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    c = scaling_constants(p).c
    two_rho = 2 * rho
    lead0 = 1 - b * q / a
    w0, w1 = (0, two_rho / lead0) if star else (1, two_rho * (x - c) / lead0)
    for k in range(1, kmax):
        lead = 1 - b * q ** (2 * k + 1) / a
        nxt = (two_rho * (x - c * q ** (2 * k)) * w1
               - rho * rho * (1 - a * q ** (2 * k - 1) / b) * w0)
        w0, w1 = w1, nxt / lead
    return w1 if kmax >= 1 else w0


def darboux_ratio_check(p, x, kmax: int = 200, eps: float = 1e-15) -> DarbouxDiagnostics:
    """Compare Q_k, Q*_k at k = kmax with their Darboux predictions.

    For x off [-1, 1]: ``Q_k (2 rho)^k -> G(rho)/(1 - rho^2)`` and
    ``Q*_k (2 rho)^k -> 2 rho F(rho)/(1 - rho^2)``.  At x = +-1 (double pole)
    the normalisation is ``(2 rho)^k/(k+1)`` and the limits are ``G(rho)`` and
    ``2 rho F(rho)``.
    """
    br = branch(x)
    rho = br.rho_star
    F = F_series(rho, p, eps)
    G = G_series(rho, p, eps)
    double = br.selected_label in ("+1", "-1")
    if double:
        norm = kmax + 1
        target, target_star = G, 2 * rho * F
    else:
        norm = 1
        target = G / (1 - rho * rho)
        target_star = 2 * rho * F / (1 - rho * rho)
    r = _scaled_Q_run(p, x, rho, kmax, False) / norm
    rs = _scaled_Q_run(p, x, rho, kmax, True) / norm
    Xc = 2 * rho * F / G
    ratio = rs / r
    return DarbouxDiagnostics(
        x=x, k=kmax, rho_star=rho, r_k=r, r_star_k=rs,
        target=target, target_star=target_star,
        rel_dev=float(abs(r - target) / abs(target)),
        rel_dev_star=float(abs(rs - target_star) / abs(target_star)),
        X_ratio=ratio, X_closed=Xc, X_dev=float(abs(ratio - Xc)))


def H1_darboux_limits(p, eps: float = 1e-15):
    """Limits of N^_k(1) and D^_k(1) as k -> oo (needs |bq/a|, |b/(aq)| < 1).

    ``(1-ab)/(1+ab) 2phi1(-aq/b, a^2q; -abq^2; q^2, bq/a)`` and
    ``(1-b/aq)/(1+ab) 2phi1(-aq/b, a^2q; -abq^2; q^2, b/aq)``.
    """
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    ab = p.ab
    q2 = q * q
    up, lo = [-a * q / b, a * a * q], [-ab * q2]
    n_inf, _ = phi_eval(PhiSeriesSpec(up, lo, q2, b * q / a), eps)
    d_inf, _ = phi_eval(PhiSeriesSpec(up, lo, q2, b / (a * q)), eps)
    return (1 - ab) / (1 + ab) * n_inf, (1 - b / (a * q)) / (1 + ab) * d_inf


def H1_asymptotic_check(p, kmax: int = 200, eps: float = 1e-15,
                        full_output: bool = False):
    """Distance of N^_k(1)/D^_k(1) and of the Darboux limit ratio from H1_closed.

    The limit-ratio part is skipped (and reported as ``None``) when
    ``|b/(aq)| >= 1``, where the series for the limit of D^_k(1) diverges.
    """
    p = _as_params(p)
    h1 = H1_closed(p, eps)
    n_hat, d_hat = hatND_values(p, 1, kmax)
    rec = float(abs(n_hat[kmax] / d_hat[kmax] - h1))
    lim = None
    if abs(p.b / (p.a * p.q)) < 1 and abs(p.b * p.q / p.a) < 1:
        n_inf, d_inf = H1_darboux_limits(p, eps)
        lim = float(abs(n_inf / d_inf - h1))
    res = rec if lim is None else max(rec, lim)
    if full_output:
        return res, {"recurrence": rec, "darboux_limit": lim, "H1": h1,
                     "N_hat": n_hat[kmax], "D_hat": d_hat[kmax]}
    return res


def H1_heine_residual(p, eps: float = 1e-15) -> float:
    """Heine's transformation taking the Darboux-limit series to D(1) and D(0)."""
    from .qseries import heine_residual
    p = _as_params(p)
    a, b, q = p.a, p.b, p.q
    args = (-a * q / b, a * a * q, -p.ab * q * q)
    return max(heine_residual(*args, b * q / a, q * q, eps),
               heine_residual(*args, b / (a * q), q * q, eps))


__all__ = [
    "BranchData", "DarbouxDiagnostics", "Entry12Params", "GammaPair",
    "RecurrenceCoeffs", "ScalingConstants", "X_closed", "X_limit", "branch",
    "darboux_ratio_check", "deltas", "F_series", "G_series", "gammas",
    "genfun_Q_check", "hatND_genfun", "hatND_genfun_check", "hatND_values",
    "H1_asymptotic_check", "H1_darboux_limits", "H1_heine_residual",
    "ND_polys", "P_polys", "Pstar_polys", "poly_eval", "Q_genfun", "Q_polys",
    "Qstar_polys", "qpoch_finite", "scaling_constants", "sqrt_x2m1",
]
