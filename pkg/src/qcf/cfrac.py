"""Continued fractions ``b0 + a1/(b1 + a2/(b2 + ...))``.

A fraction is described by :class:`CFSpec`: a constant ``b0`` and a callable
``k -> (a_k, b_k)`` for ``k >= 1``.  Approximants are available by backward
evaluation (:func:`eval_backward`, which also handles modified approximants
``S_n(w)``) and by the forward three-term recurrence
(:func:`convergents_forward`), which rescales by powers of two so long
fractions neither overflow nor underflow.

A partial numerator ``a_k == 0`` ends the fraction: every later linear
fractional map is swallowed and the value is the finite approximant of
depth ``k - 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from .errors import DegenerateError, PoleError
from .scalars import ScaledValue, is_exact, scaled_normalize

# rescale forward recurrences when a magnitude leaves [2^-512, 2^512]
_BIG_EXP = 512


@dataclass(frozen=True)
class CFSpec:
    """``b0 + a_1/(b_1 + a_2/(b_2 + ...))`` with ``terms(k) = (a_k, b_k)``."""

    b0: object
    terms: Callable[[int], tuple]
    truncation_hint: Optional[int] = None

    def term(self, k: int):
        if self.truncation_hint is not None and k >= self.truncation_hint:
            return 0, 1
        return self.terms(k)

    @classmethod
    def from_lists(cls, b0, a, b):
        """Finite fraction from ``a = [a_1..a_n]``, ``b = [b_1..b_n]``."""
        a, b = list(a), list(b)
        if len(a) != len(b):
            raise ValueError("a and b must have the same length")
        return cls(b0, lambda k: (a[k - 1], b[k - 1]), truncation_hint=len(a) + 1)

    @classmethod
    def constant(cls, b0, a, b):
        """Periodic fraction with a_k = a, b_k = b for all k."""
        return cls(b0, lambda k: (a, b))


@dataclass(frozen=True)
class ConvergentState:
    """Scaled numerators/denominators after ``k`` steps.

    All four entries share the same power-of-two scale, so ``N_k / D_k`` is
    exactly the k-th approximant.
    """

    N_k: ScaledValue
    N_km1: ScaledValue
    D_k: ScaledValue
    D_km1: ScaledValue
    k: int

    def approximant(self) -> complex:
        return self.N_k.ratio(self.D_k)


@dataclass(frozen=True)
class CFLimit:
    value: object
    depth: int
    last_delta: float
    converged: bool


def eval_backward(cf: CFSpec, n: int, w=0):
    """S_n(w) = b0 + a_1/(b_1 + ... + a_n/(b_n + w)).

    ``w = 0`` gives the classical n-th approximant; other values of ``w``
    give modified approximants.  Raises :class:`PoleError` (with the index)
    when an intermediate denominator is exactly zero.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    tail = w
    for k in range(n, 0, -1):
        a, b = cf.term(k)
        if a == 0:
            tail = 0
            continue
        den = b + tail
        if den == 0:
            raise PoleError(f"zero denominator b_{k} + tail at k = {k}", index=k)
        tail = Fraction(a) / den if is_exact(a, den) else a / den
    return cf.b0 + tail


def _magnitude_exponent(*vals) -> Optional[int]:
    m = max(abs(v) for v in vals)
    if m == 0 or not math.isfinite(m):
        return None
    return math.frexp(m)[1]


def convergents_forward(cf: CFSpec, n: int) -> Iterator[tuple]:
    """Yield ``(k, S_k(0), ConvergentState)`` for k = 1..n.

    Uses ``N_k = b_k N_{k-1} + a_k N_{k-2}`` (same for ``D_k``) with
    ``N_{-1} = 1, N_0 = b0, D_{-1} = 0, D_0 = 1``.  In floating mode all four
    state entries are multiplied by the same power of two whenever the
    largest leaves [2^-512, 2^512]; this changes no approximant.  The stream
    stops early if the fraction terminates (``a_k == 0``).  An approximant
    with ``D_k == 0`` is reported as ``inf``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    Nm2, Nm1 = 1, cf.b0
    Dm2, Dm1 = 0, 1
    scale = 0
    zero_run = 0
    for k in range(1, n + 1):
        a, b = cf.term(k)
        if a == 0:
            return
        N = b * Nm1 + a * Nm2
        D = b * Dm1 + a * Dm2
        Nm2, Nm1, Dm2, Dm1 = Nm1, N, Dm1, D
        exact = is_exact(N, D, Nm2, Dm2)
        if not exact:
            e = _magnitude_exponent(Nm1, Nm2, Dm1, Dm2)
            if e is not None and not (-_BIG_EXP <= e <= _BIG_EXP):
                f = math.ldexp(1.0, -e)
                Nm2, Nm1, Dm2, Dm1 = Nm2 * f, Nm1 * f, Dm2 * f, Dm1 * f
                scale += e
        if D == 0:
            zero_run += 1
            if zero_run >= 3:
                raise DegenerateError(f"D_k vanishes for 3 consecutive k (k = {k})")
            value = math.inf
        else:
            zero_run = 0
            value = Fraction(Nm1) / Dm1 if exact else Nm1 / Dm1
        if exact:
            state = ConvergentState(Nm1, Nm2, Dm1, Dm2, k)
        else:
            state = ConvergentState(scaled_normalize(Nm1, scale),
                                    scaled_normalize(Nm2, scale),
                                    scaled_normalize(Dm1, scale),
                                    scaled_normalize(Dm2, scale), k)
        yield k, value, state


def numerators_denominators(cf: CFSpec, n: int):
    """Unscaled lists ``[N_0..N_n]`` and ``[D_0..D_n]`` (exact mode friendly)."""
    Ns, Ds = [cf.b0], [1]
    Nm2, Dm2 = 1, 0
    for k in range(1, n + 1):
        a, b = cf.term(k)
        N = b * Ns[-1] + a * Nm2
        D = b * Ds[-1] + a * Dm2
        Nm2, Dm2 = Ns[-1], Ds[-1]
        Ns.append(N)
        Ds.append(D)
    return Ns, Ds


def determinant_check(cf: CFSpec, k: int):
    """N_k D_{k-1} - N_{k-1} D_k - (-1)^(k-1) a_1 a_2 ... a_k (zero in exact mode)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    Ns, Ds = numerators_denominators(cf, k)
    prod = 1
    for j in range(1, k + 1):
        prod *= cf.term(j)[0]
    return Ns[k] * Ds[k - 1] - Ns[k - 1] * Ds[k] - (-1) ** (k - 1) * prod


def limit_detect(cf: CFSpec, eps: float, max_depth: int = 1000) -> CFLimit:
    """Run forward convergents until three consecutive steps move less than ``eps``.

    A terminating fraction converges at its last nonzero partial numerator.
    Non-convergence is reported through ``converged=False``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    prev = cf.b0
    value = cf.b0
    depth = 0
    delta = math.inf
    small = 0
    for k, value, _ in convergents_forward(cf, max_depth):
        depth = k
        delta = float(abs(value - prev)) if value != math.inf and prev != math.inf else math.inf
        prev = value
        small = small + 1 if delta <= eps else 0
        if small >= 3:
            return CFLimit(value, depth, delta, True)
    if depth < max_depth:
        # stream ended early: the fraction terminated at this depth
        return CFLimit(value, depth, 0.0, True)
    return CFLimit(value, depth, delta, False)


def equivalence_transform(cf: CFSpec, c: Callable[[int], object]) -> CFSpec:
    """Equivalent fraction with a_k' = c_k c_{k-1} a_k, b_k' = c_k b_k (c_0 = 1).

    Every approximant S_k(0) is unchanged.
    """
    def mult(k):
        if k == 0:
            return 1
        ck = c(k)
        if ck == 0:
            raise ValueError(f"equivalence multiplier c_{k} is zero")
        return ck

    def terms(k):
        a, b = cf.term(k)
        ck = mult(k)
        return ck * mult(k - 1) * a, ck * b

    return CFSpec(cf.b0, terms, cf.truncation_hint)
