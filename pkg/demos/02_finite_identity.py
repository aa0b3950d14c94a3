"""
Exact finite identities behind Entry 12
=======================================

The proof runs through the sums D(s) = 2phi1(bq^(2s-1)/a, -bq/a; -q^(2s); q^2, a^2 q).
Two rational identities split the D(s) recursion into pieces, and the
fraction truncated at any depth s, with tail (1+q^(2s+2)) D(s+1)/D(s+2), already
equals the product: the convergence is "modified", not only in the limit.
"""
from fractions import Fraction

from qcf import D_sum, product_side, recursion_residual, star_residual, theorem1_residual
from qcf.entry12 import twostar_residual

# rational inputs: residuals are exact Fractions
p = (Fraction(1, 3), Fraction(-1, 4), Fraction(1, 5))
print("star    k=0..4:", [star_residual(k, p) for k in range(5)])
print("twostar k=3,s=2:", twostar_residual(3, 2, p))

# floating point: the D(s) recursion and the depth-s identity
p = (0.3, -0.2, 0.5)
for s in range(4):
    print(f"D({s}) = {D_sum(s, p).value:.15f}   recursion residual {recursion_residual(s, p):.1e}")

print("product side", product_side(p))
for s in range(0, 9, 2):
    print(f"depth s={s}: |fraction - product| = {theorem1_residual(s, p):.1e}")
