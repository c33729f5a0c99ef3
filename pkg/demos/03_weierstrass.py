"""
Weierstrass division, Artin-Schreier and Hensel in truncated series rings
=========================================================================
"""

# %%
from charpforms.parsing import parse_ring, parse_series, parse_series_polynomial
from charpforms.weierstrass import (artin_schreier_solve, hensel_lift, regularize, weierstrass_divide,
                                    weierstrass_prepare, wp_series)

R = parse_ring("GF(5)[[u]][[T]] D=10")
f = parse_series("T^2 - u + u*T^3", R)
g = parse_series("T^5 + 1", R)
q, r = weierstrass_divide(g, f)
print("q =", q)
print("r =", r)
print(q * f + r == g)

# %%
prep = weierstrass_prepare(f)
print("unit:", prep.unit)
print("poly:", prep.poly, "distinguished:", prep.is_distinguished())

# %%
# X1*X2 is not regular in T; shifting X_i by powers of T fixes that.
S = parse_ring("GF(3)[[X1,X2,T]] D=8")
print(regularize(parse_series("X1*X2", S)))

# %%
# x - x^2 = t has the solution t + t^2 + t^4 + ... in the maximal ideal.
A = parse_ring("GF(2)[[t]] D=16")
b = artin_schreier_solve(parse_series("t", A))
print(b, "|", wp_series(b))

# %%
# Newton lifting doubles the valuation of g(x) at every step.
B = parse_ring("GF(5)[[t]] D=16")
poly = parse_series_polynomial("X^2 - (1 + 2*t)*X + t^2", B, "X")
res = hensel_lift(poly, parse_series("1", B), history=True)
print(res.root)
print(res.valuations)
