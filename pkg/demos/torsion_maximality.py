"""
Levi-Civita maximises Ricci among skew-torsion connections
==========================================================

For random metrics and random 3-forms the Ricci curvature of the
connection with torsion never exceeds the Levi-Civita one, and the gap is
the quarter trace of T_X squared.
"""
import numpy as np

from stringforms import (su2, abelian, direct_sum, levi_civita, ricci,
                         torsion_from_three_form, connection_with_torsion,
                         ricci_torsion_formula, random_metric, random_three_form,
                         levi_civita_maximality_check, scaled_ricci_family,
                         scaled_ricci_formula)

rng = np.random.default_rng(7)
frame = su2(False)
g = random_metric(rng, 3)
H = random_three_form(rng, 3)
lc = levi_civita(frame, g)
T = torsion_from_three_form(frame, g, H)
direct = ricci(connection_with_torsion(lc, T))
formula = ricci_torsion_formula(frame, g, ricci(lc), T, H)
print("direct vs formula:", np.abs(direct.matrix - formula.matrix).max())

print(levi_civita_maximality_check(frame, 100, seed=1))
print(levi_civita_maximality_check(direct_sum(su2(False), abelian(2, False)), 50, seed=2))

# rescaling g by eps with H fixed: the torsion term goes like 1/eps^2
for eps in (0.01, 1.0, 100.0):
    direct = scaled_ricci_family(frame, g, H, eps).symmetric
    for power in (1, 2):
        gap = np.abs(direct - scaled_ricci_formula(frame, g, H, eps, power)).max()
        print(f"eps={eps:g} power={power}: max gap {gap:.2e}")
