"""
Chern-Simons values on the round three-sphere
=============================================

Walk through the pipeline once by hand: frame, metric, Levi-Civita
connection, curvature, then the Chern-Simons integral, all in exact
rational arithmetic.
"""
from stringforms import (su2, g_alpha, levi_civita, curvature, ricci, cs_integral,
                         integral_H, e_invariant, StringClass)

frame = su2()                     # [e1, e2] = 2 e3 and cyclic
g = g_alpha(1, 1)                 # alpha1 = alpha2 = 1: the round metric
print("Gram matrix:\n", g.gram)

conn = levi_civita(frame, g)
print("Gamma_12^3 =", conn.gamma[2, 0, 1])   # half the bracket on the round metric

R = curvature(conn)                # R[l, i, j, k]
print("Ricci eigenvalues:", ricci(conn).eigenvalues())

# the base value of the Chern-Simons integral is exactly -1 here
print("int CS(Theta_g) =", cs_integral(conn))

for text in ("L", "R", "dD4", "L+3", "R-2"):
    cls = StringClass.parse(text)
    print(f"  int H[{cls}] = {integral_H(cls, g)}   e = {e_invariant(cls).format(24)}")

# right-invariant metrics swap the roles of L and R
g_right = g_alpha(1, 1, "right")
print("right chirality, int H[R] =", integral_H(StringClass.parse("R"), g_right))
