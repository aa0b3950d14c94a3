"""
The J-fraction at x = 1 and the two normalisations
==================================================

H(x) is a J-fraction in x.  At x = 1 it has a closed form as a ratio of two
2phi1 series, so K = H(1)/(1-ab) = D(1)/(2 D(0)).  K and the Entry 12
fraction C are linked by 1/K - (1-ab) = 1/C.

For |ab| > 1 or |q| > 1 an equivalence transform moves the parameters back
into the disc.
"""
from qcf import C_limit, H1_closed, H_limit, K_limit, kc_residual
from qcf.entry12 import C_value_by_remarks, invert_params_agreement, invert_q_agreement

p = (0.3, -0.2, 0.5)
print("H(1) closed form ", H1_closed(p))
print("H(1) J-fraction  ", H_limit(p, 1).value)
print("K =", K_limit(p).value, " C =", C_limit(p).value)
print("1/K - (1-ab) - 1/C =", kc_residual(p))

# |ab| > 1: C(a, b, q) = -(1/ab) C(1/a, 1/b, q), compared depth by depth
print("|ab|>1 per-depth gap", invert_params_agreement((2, -1.5, 0.5), 60))
# |q| > 1: same approximants as with p = 1/q
print("|q|>1  per-depth gap", invert_q_agreement((0.3, -0.2, 2), 60))
print("C(0.3, -0.2, 2) via p = 1/2:", C_value_by_remarks((0.3, -0.2, 2)))
