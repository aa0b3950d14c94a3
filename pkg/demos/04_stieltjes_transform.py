"""
X(x) = lim P*_k / P_k and its closed form
=========================================

Rescaling H gives monic orthogonal polynomials P_k with
x P_k = P_{k+1} + c q^(2k) P_k + beta_k P_{k-1}.  Off [-1, 1] the ratio of the
associated polynomials converges to 2 rho F(rho)/G(rho), rho being the root of
rho^2 - 2 x rho + 1 inside the unit disc.

At x = +-1 the approach is only O(1/k).  At this parameter point G(-1) is
small, so the 1/k term is large and x = -1 converges very slowly.
"""
import warnings

from qcf import MassPointWarning, X_closed, X_limit, branch
from qcf.orthopoly import G_series

p = (0.6, -0.15, 0.5)
for x in (2, -2, 1.5j, 0.4 + 1.2j):
    print(f"x={x!s:>10}  closed {X_closed(p, x):.15f}  limit {X_limit(p, x, 300):.15f}")

for x in (1, -1):
    ref = X_closed(p, x)
    devs = [abs(X_limit(p, x, k) - ref) for k in (2500, 5000, 10_000)]
    print(f"x={x:+d}  X={ref:.6f}  |error| at k=2500/5000/10000:", ["%.2e" % d for d in devs])

print("G(1) =", G_series(1, p), " G(-1) =", G_series(-1, p))

# G(rho(x)) vanishes near x = -2.3: a mass point of the measure
with warnings.catch_warnings():
    warnings.simplefilter("ignore", MassPointWarning)
    for x in (-2.2, -2.3, -2.4):
        print(x, G_series(branch(x).rho_star, p))
