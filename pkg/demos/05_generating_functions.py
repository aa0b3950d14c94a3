"""
Generating functions and Darboux asymptotics
============================================

Q_k = P_k/(bq/a; q^2)_k has a generating function that is a q-series in t
with two simple poles at t = 2/rho_1, 2/rho_2.  The pole closest to the
origin fixes the growth of Q_k (Darboux's method), which is where the
closed form for X(x) comes from.
"""
from qcf import Q_polys, darboux_ratio_check, genfun_Q_check, hatND_genfun_check
from qcf.orthopoly import Q_genfun, deltas

p = (0.6, -0.15, 0.5)
x = 2
series = Q_genfun(p, x, 6)
print("closed form coefficients", [round(c.real, 12) for c in series.coeffs])
print("recurrence              ", [round(v, 12) for v in Q_polys(p, x, 6)])
print("max gap to order 12:", genfun_Q_check(p, x, 12), genfun_Q_check(p, x, 12, star=True))

# numerator/denominator series of H at x = 1 (delta_1 = 1, delta_2 = -ab)
print("deltas at x=1:", deltas(p, 1), " gap:", hatND_genfun_check(p, 1, 12))

for x, k in ((2, 200), (1, 5000)):
    d = darboux_ratio_check(p, x, k)
    print(f"x={x} k={k}: rel dev {d.rel_dev:.2e} / {d.rel_dev_star:.2e}, "
          f"ratio {d.X_ratio:.12f} vs X {d.X_closed:.12f}")
