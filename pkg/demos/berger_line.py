"""
The Berger line alpha2 = 1
==========================

Along the Berger line the integral of H for the anchor class has a closed
form; compare the pipeline to it, then locate the zeros.
"""
import numpy as np

from stringforms import berger_integral_closed_form, find_H_zero
from stringforms.sweep import berger_values

alphas = np.array([0.3, 0.5, 1 / np.sqrt(2), 1.0, 1.5, 2.0, 3.0])
pipe = berger_values(alphas, "L")
closed = np.array([berger_integral_closed_form(a) for a in alphas], dtype=float)
for a, p, c in zip(alphas, pipe, closed):
    print(f"alpha1={a:.6f}  pipeline={p:+.15f}  closed={c:+.15f}  diff={p - c:.1e}")

# dD4 sits halfway between L and R, so it vanishes where int H_L = -1
for cls in ("L", "dD4", "R"):
    print(cls, "zeros on [0.2, 3]:", find_H_zero(cls, family="berger"))

# any real value below the maximum is attained somewhere on the line
print("int H_L = -1.5 at", find_H_zero("L", family="berger", target=-1.5))
