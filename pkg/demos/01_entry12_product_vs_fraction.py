"""
Entry 12: infinite products against a continued fraction
=========================================================

The quotient of q-products

    (a^2 q^3, b^2 q^3; q^4)_oo / (a^2 q, b^2 q; q^4)_oo

equals the continued fraction

    1/(1-ab + (a-bq)(b-aq)/((1-ab)(1+q^2) + (a-bq^3)(b-aq^3)/((1-ab)(1+q^4) + ...)))

for |q| < 1 and |ab| < 1.
"""
from qcf import C_limit, cf_C_spec, convergents_forward, product_side

p = (0.3, -0.2, 0.5)
prod = product_side(p)
print("product side      ", prod)

# forward convergents, with their distance to the product
for k, v, _ in convergents_forward(cf_C_spec(p), 12):
    print(f"k={k:2d}  S_k = {v:.16f}  |S_k - prod| = {abs(v - prod):.1e}")

# stop after three consecutive steps below eps
lim = C_limit(p, eps=1e-14)
print("limit", lim.value, "depth", lim.depth, "converged", lim.converged)

# complex q is fine too
pz = (0.25, -0.2, 0.3 + 0.3j)
print("complex q:", product_side(pz), C_limit(pz).value)
